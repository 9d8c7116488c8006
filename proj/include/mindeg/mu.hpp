#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mindeg/lattice.hpp"
#include "mindeg/perm_group.hpp"
#include "mindeg/stanza.hpp"

namespace mindeg {

// Result of the minimal-degree solver. `mu` is the least number of points
// of a faithful action of g. The witness lists the subgroup classes whose
// coset actions realize that minimum: the indexes sum to mu and the cores
// intersect trivially. `embedding` is the disjoint union of those coset
// actions, a faithful copy of g on exactly mu points. `wright_witness` is
// the class id of a nilpotent subgroup with the same mu when one is known,
// -1 otherwise.
struct MuCertificate {
  std::uint64_t mu = 0;
  std::vector<int> witness;               // class ids, ascending
  std::vector<PermGroup> witness_groups;  // representatives, aligned
  PermGroup embedding;
  int wright_witness = -1;
};

// Exact minimal faithful degree, solved as weighted set cover by branch and
// bound: the ground set is the minimal normal subgroups of g, each subgroup
// class is a candidate of weight [g : class] covering the minimal normals
// not inside its core, and a cover is exactly a collection whose cores
// intersect trivially. Candidates a class cannot beat are pruned first;
// among optimal covers the one with the fewest classes and then the
// lexicographically least id list is returned. The certificate is
// re-verified before being returned; the trivial group gets mu = 0 with an
// empty witness. Throws budget_error when the lattice is incomplete, the
// group has more than 64 minimal normal subgroups, or mu would exceed
// kMaxDegree (no embedding representable).
MuCertificate mu(const PermGroup& g, const LatticeOptions& opt = {});
MuCertificate mu(const SubgroupLattice& lat);

// Just the value, through the same verified path as mu(). Memoized across
// calls for groups of order up to 4096, keyed by a relabeling-invariant
// element table, so structural scans can ask repeatedly. Thread safe.
std::uint64_t mu_value(const PermGroup& g, const LatticeOptions& opt = {});

// Reference solver used to cross-check mu(): walks subsets of the subgroup
// classes directly against the definition, intersecting cores recomputed
// from the representatives, with no candidate reduction and no bound beyond
// dropping branches that already weigh as much as the best complete cover
// found. Exponential; meant for ambient orders in the low thousands.
std::uint64_t mu_by_exhaustive_search(const SubgroupLattice& lat);

// Disjoint union of the right-coset actions of the witness subgroups.
// Re-checks the witness part of the certificate first and throws input_error
// when it does not verify; otherwise stores the action into cert.embedding
// and returns it.
PermGroup minimal_embedding(const PermGroup& g, MuCertificate& cert);

// Class id of a nilpotent subgroup class whose mu equals mu(g), if any,
// scanning classes from the largest order down; nullopt when no nilpotent
// subgroup reaches mu(g). A nilpotent g always reports its own class.
std::optional<int> in_wright_class(const PermGroup& g,
                                   const LatticeOptions& opt = {});
std::optional<int> in_wright_class(const SubgroupLattice& lat,
                                   const LatticeOptions& opt = {});

// From-scratch certificate check, independent of the solver: the witnesses
// are subgroups of g, their indexes sum to mu, their cores (recomputed)
// intersect trivially, and the embedding is exactly the disjoint coset
// action of the witness, hence faithful on mu points. Returns false and
// fills `reason` (when non-null) on the first failed check.
bool verify_certificate(const PermGroup& g, const MuCertificate& cert,
                        std::string* reason = nullptr);

// Text form: stanza "mu-certificate" carrying the group spec, order, mu,
// witness generator lists (with class ids when known), the embedding
// generators, and the wright witness when set. Round trips through
// certificate_from_stanza and verify_certificate.
Stanza certificate_to_stanza(const PermGroup& g, const MuCertificate& cert);
std::pair<PermGroup, MuCertificate> certificate_from_stanza(const Stanza& st);

}  // namespace mindeg
