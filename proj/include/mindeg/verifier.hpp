#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mindeg/lattice.hpp"
#include "mindeg/mu.hpp"
#include "mindeg/perm_group.hpp"
#include "mindeg/stanza.hpp"

namespace mindeg {

// One additivity failure found by a sweep, carrying everything needed to
// re-check it without the sweep: canonical specs and full certificates for
// the product group and both factors.
struct SweepViolation {
  int class_id = -1;
  std::string group_spec;
  std::string left_spec;
  std::string right_spec;
  std::uint64_t mu_group = 0;
  std::uint64_t mu_left = 0;
  std::uint64_t mu_right = 0;
  MuCertificate group_cert;
  MuCertificate left_cert;
  MuCertificate right_cert;
};

// Outcome of sweeping the subgroup classes of Sym(degree): every class
// whose minimal degree equals the ambient degree is decomposed as an
// internal direct product in all possible ways and additivity of the
// minimal degree is checked for each splitting. Every isomorphism type
// with that minimal degree occurs among these classes, so an empty
// violation list settles the degree. The timing field is informational
// and never serialized, keeping machine output byte-stable.
struct VerificationReport {
  int degree = 0;
  std::size_t classes_total = 0;
  std::size_t classes_minimally_embedded = 0;
  std::size_t decompositions_checked = 0;
  std::vector<SweepViolation> violations;
  // Classes with mu equal to the degree and no nilpotent subgroup of the
  // same minimal degree, ascending class id.
  std::vector<int> exceptional_classes;
  bool lattice_complete = true;
  bool completeness_assumed = false;
  std::uint64_t lattice_checksum = 0;
  double seconds = 0.0;
};

// opt.jobs workers share the per-class work; results and report contents
// are identical whatever the worker count. opt.cache_dir, when set, caches
// the ambient lattice and the per-representative lattices built along the
// way. Budget exhaustion on the ambient lattice flags the report instead
// of failing; budget errors inside a class propagate.
VerificationReport sweep_products(int degree, const LatticeOptions& opt = {});
VerificationReport sweep_products(const SubgroupLattice& lat, const LatticeOptions& opt = {});

// Class ids of Sym(degree) classes that realize the ambient degree as
// their minimal degree without a nilpotent witness. Ambient conjugacy
// already folds permutation-equivalent copies into one class.
std::vector<int> exceptional_catalog(int degree, const LatticeOptions& opt = {});
std::vector<int> exceptional_catalog(const SubgroupLattice& lat, const LatticeOptions& opt = {});

// Clause-by-clause outcome of the orbit decomposition lemma on one group
// whose minimal degree equals its point count. `applicable` counts the
// instances where a clause hypothesis held; `failed` counts those whose
// conclusion did not follow.
struct L1Clause {
  std::string name;
  int applicable = 0;
  int failed = 0;
};

struct L1Report {
  std::vector<std::size_t> orbit_sizes;
  std::vector<L1Clause> clauses;
  bool all_pass() const;
};

// Checks, per orbit decomposition of g: (i) projections onto orbit subsets
// are again minimally embedded, (ii) each orbit supports a nontrivial
// element of its pointwise-complement kernel, (iii) a size-2 orbit splits
// off a central involution as a direct factor, (iv) a size-3 orbit yields
// a 3-cycle in the kernel, (v) a 3-cycle in a size-4 orbit kernel forces
// the alternating group there, (vi) a transposition in a size-4 orbit
// kernel forces its complementary transposition, (vii) an orbit of prime
// size larger than all other orbits yields a full cycle in the kernel.
// Throws input_error unless mu(g) equals the degree.
L1Report check_L1(const PermGroup& g, const LatticeOptions& opt = {});

// Centralizer facts for every minimally embedded class of Sym(degree):
// the centralizer is abelian; for wright-class members every prime order
// element of the centralizer lies in the group, and an elementary abelian
// centralizer is contained in the group; at degree 9 a nontrivial
// centralizer of a transitive class is contained in the class.
struct CentralizerReport {
  int degree = 0;
  std::size_t classes_checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_notes;
  bool lattice_complete = true;
  bool pass() const { return failures == 0 && lattice_complete; }
};

CentralizerReport check_centralizer_theorems(int degree, const LatticeOptions& opt = {});

// The base of C3 wr Sym(3) contains exactly two nontrivial proper
// subgroups normal in the whole wreath product: the diagonal of order 3
// inside the sum-zero subgroup of order 9.
bool check_diagonal_lemma();

// Sym(3) x C4 has exactly one proper subgroup projecting onto both
// factors; it has order 12, contains an element of order 4, and is the
// unique subgroup with those properties among those projecting onto the
// symmetric factor.
bool check_subdirect_uniqueness();

// Membership test for base elements of the degree-10 witness group: an
// element of the block-swap base of C2 wr C5 on points 1..10 lies in the
// witness exactly when it swaps an even number of blocks {i, i+5}.
// Throws input_error if the permutation is not a base element.
bool g225_base_member(const Perm& p);

// End-to-end check of the strict inequality witness on 10 points: the
// order-80 group has minimal degree 10, its centralizer is a C2 meeting
// it trivially, together they fill an order-160 internal direct product,
// and the abstract product of the two still has minimal degree 10, below
// the additive 12.
struct SaundersReport {
  std::uint64_t mu_group = 0;
  std::uint64_t centralizer_order = 0;
  bool centralizer_meets_trivially = false;
  bool internal_product_is_whole = false;
  bool base_parity_ok = false;
  std::uint64_t mu_product = 0;
  MuCertificate group_cert;
  MuCertificate product_cert;
  bool pass() const;
};

SaundersReport saunders_witness(const LatticeOptions& opt = {});

// Machine form: one witness stanza followed by the two certificates
// (group, then abstract product).
StanzaFile saunders_to_stanzas(const SaundersReport& r);

// Minimal degrees by isomorphism type, collected from the subgroup
// classes of Sym(1)..Sym(max_degree) and deduplicated by isomorphism
// testing. Pairs the tester cannot separate stay as distinct rows and are
// listed in `unresolved`, never merged. Rows sort by (order, mu, label).
struct TableRow {
  std::string label;
  std::uint64_t order = 0;
  std::uint64_t mu = 0;
  bool wright = false;
};

struct MuTable {
  int max_degree = 0;
  std::vector<TableRow> rows;
  std::vector<std::string> unresolved;
  bool complete = true;
};

MuTable generate_table(int max_degree, const LatticeOptions& opt = {});
std::string table_to_csv(const MuTable& t);
StanzaFile table_to_stanzas(const MuTable& t);

// Machine form of a sweep report: one header stanza, then per violation a
// violation stanza followed by the three certificates (product, left,
// right). render_report is the human rendering and includes timing.
StanzaFile report_to_stanzas(const VerificationReport& r);
std::string render_report(const VerificationReport& r);

// Standalone re-check of an emitted stanza file: every certificate stanza
// re-verifies against its own group spec, violation stanzas agree with
// their certificates, report arithmetic is consistent, and only known
// stanza names appear. The parse step has already enforced the checksum.
bool check_stanza_file(const StanzaFile& f, std::string* why = nullptr);

}  // namespace mindeg
