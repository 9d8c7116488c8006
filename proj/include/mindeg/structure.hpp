#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mindeg/perm_group.hpp"

namespace mindeg {

// Element-enumeration crossover: groups at or below this order are handled
// by element filtering, larger ones by backtrack or by recognized shape.
inline constexpr std::uint64_t kEnumBudget = 100'000;

bool is_natural_symmetric(const PermGroup& g);    // full Sym on its degree
bool is_natural_alternating(const PermGroup& g);  // full Alt on its degree

// Centralizer of g in Sym(degree). Computed by the orbit-propagation search;
// when the orbit sizes are pairwise distinct and the order is enumerable the
// result is recomputed through the orbit-wise normalizer-quotient maps and
// the two answers are compared (logic_error on disagreement).
PermGroup centralizer_in_sym(const PermGroup& g);

// {g in G : H^g = H}. Element filter for |G| <= kEnumBudget, otherwise G
// must be the natural symmetric or alternating group.
PermGroup normalizer(const PermGroup& g, const PermGroup& h);

bool is_normal(const PermGroup& g, const PermGroup& h);

// Largest normal subgroup of g inside h: intersection of the conjugates of
// h over a transversal of its normalizer. When the index of h is small
// enough to act on, the result is checked against the coset-action kernel.
PermGroup core(const PermGroup& g, const PermGroup& h);

PermGroup intersection(const PermGroup& a, const PermGroup& b);

// Smallest normal subgroup of g containing the seed elements.
PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seed);

Perm commutator(const Perm& a, const Perm& b);  // a^-1 b^-1 a b

PermGroup derived_subgroup(const PermGroup& g);
std::vector<PermGroup> derived_series(const PermGroup& g);  // g, g', ... to the stable term
PermGroup perfect_residual(const PermGroup& g);
PermGroup center(const PermGroup& g);

bool is_abelian(const PermGroup& g);
bool is_perfect(const PermGroup& g);
bool is_solvable(const PermGroup& g);
bool is_nilpotent(const PermGroup& g);  // every Sylow subgroup normal

// Prime factorization of the group order (degree <= 32 keeps every prime
// factor <= 31).
std::map<int, int> order_factorization(const PermGroup& g);

// One representative per conjugacy class of elements, identity included,
// sorted by (element order, image table). Natural symmetric and alternating
// groups come from cycle types; others are enumerated (kEnumBudget).
std::vector<Perm> element_class_reps(const PermGroup& g);

// order -> count over all elements. Natural symmetric and alternating
// groups are counted by cycle type, others by enumeration within budget.
std::map<std::uint64_t, std::uint64_t> element_order_histogram(
    const PermGroup& g, std::uint64_t budget = kEnumBudget);

// All normal subgroups: joins of conjugacy-class closures, trivial and full
// included. Sorted by order (ties keep deterministic discovery order).
std::vector<PermGroup> normal_subgroups(const PermGroup& g);

std::vector<PermGroup> minimal_normal_subgroups(const PermGroup& g);

PermGroup sylow_subgroup(const PermGroup& g, int p);

enum class IsoVerdict { yes, no, unresolved };

// Isomorphism test: invariant screen, then backtrack over images of a small
// generating tuple with the paired-embedding order test as the relation
// check. `unresolved` only on exhausted budget, never a guess.
IsoVerdict is_isomorphic(const PermGroup& g, const PermGroup& h);

// Transporter in Sym(degree) with G^g = H, or none. Same-degree inputs.
std::optional<Perm> sym_conjugate(const PermGroup& g, const PermGroup& h);

// Internal direct product decomposition into two nontrivial normal
// subgroups; left has the smaller (or equal) order.
struct DirectDecomposition {
  PermGroup left;
  PermGroup right;
};

// All unordered pairs {A, B} of nontrivial normal subgroups with trivial
// intersection and |A||B| = |G|, each pair once.
std::vector<DirectDecomposition> direct_decompositions(const PermGroup& g);

}  // namespace mindeg
