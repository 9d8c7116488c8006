#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "mindeg/perm.hpp"

namespace mindeg {

using BigInt = boost::multiprecision::cpp_int;

// One level of a stabilizer chain: the pointwise stabilizer of the base
// points above it, with the orbit of its own base point and explicit coset
// representatives (trans_by_point[p] maps base -> p).
struct ChainLevel {
  int base = -1;
  std::vector<Perm> gens;
  std::vector<int> orbit;                // discovery order, orbit[0] == base
  std::vector<Perm> trans_by_point;      // degree-sized; empty Perm = not in orbit
  std::vector<char> in_orbit;
};

struct StabChain {
  int degree = 0;
  std::vector<ChainLevel> levels;
  std::vector<Perm> strong_gens;
  BigInt order = 1;

  // Returns the sifted residue and the level at which sifting stopped
  // (levels.size() when the whole chain was consumed). Membership is
  // residue.is_identity().
  std::pair<Perm, std::size_t> sift(const Perm& g) const;
};

// Finite permutation group on 0..degree-1, defined by generators.
// Cheap to copy (shared immutable state). The stabilizer chain is built
// deterministically on first structural query and never changes afterwards,
// so concurrent readers are safe.
class PermGroup {
 public:
  PermGroup();  // degree-0 trivial group
  static PermGroup trivial(int degree);
  static PermGroup from_generators(int degree, std::vector<Perm> gens);

  // Standard constructions used throughout: natural symmetric and
  // alternating groups, a cyclic n-cycle on n points, the dihedral group of
  // the given order acting on the polygon (order must be even).
  static PermGroup symmetric(int degree);
  static PermGroup alternating(int degree);
  static PermGroup cyclic(int n);
  static PermGroup dihedral(int order);

  int degree() const;
  const std::vector<Perm>& generators() const;

  const BigInt& order() const;
  std::uint64_t order_u64() const;  // throws budget_error if it does not fit
  bool is_trivial() const { return order() == 1; }

  bool contains(const Perm& p) const;
  bool contains_group(const PermGroup& h) const;  // every generator of h
  bool same_group(const PermGroup& other) const;

  // All elements in a deterministic order. Throws budget_error when the
  // group order exceeds `budget`.
  std::vector<Perm> elements(std::uint64_t budget = 1'000'000) const;

  // Stabilizer of the point x, via a chain rebuilt with x as first base
  // point. Exact, not an enumeration.
  PermGroup point_stabilizer(int x) const;

  PermGroup conjugated_by(const Perm& g) const;

  const StabChain& chain() const;

  // Base points and transversal sizes of the deterministic chain; the
  // product of the sizes is the group order.
  std::vector<int> base() const;
  std::vector<std::uint64_t> transversal_sizes() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Right-coset action of G on the cosets of H (H must be a subgroup of G).
// Cosets are numbered 0..index-1 with coset 0 = H; transversal[i] is the
// representative of coset i (transversal[0] is the identity). The image
// group is the induced action on coset numbers; gen_images[k] is the action
// of G.generators()[k]. The kernel of the action is the core of H in G.
struct CosetAction {
  std::vector<Perm> transversal;
  PermGroup image;                // degree == index
  std::vector<Perm> gen_images;   // aligned with G.generators()
};

CosetAction coset_action(const PermGroup& G, const PermGroup& H,
                         std::uint64_t index_budget = 20'000);

// Right-coset representatives of H in G (coset 0 = H, representative is the
// identity), without building the induced action. Usable when the index
// exceeds kMaxDegree.
std::vector<Perm> right_transversal(const PermGroup& G, const PermGroup& H,
                                    std::uint64_t index_budget = 20'000);

}  // namespace mindeg
