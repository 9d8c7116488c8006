#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mindeg/actions.hpp"
#include "mindeg/backtrack.hpp"
#include "mindeg/errors.hpp"
#include "mindeg/lattice.hpp"
#include "mindeg/stanza.hpp"
#include "mindeg/structure.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace mindeg;

namespace {

PermGroup make(int degree, std::vector<const char*> cycles) {
  std::vector<Perm> gens;
  for (const char* c : cycles) gens.push_back(Perm::parse_cycles(c, degree));
  return PermGroup::from_generators(degree, std::move(gens));
}

PermGroup h7() { return make(7, {"(1 2 3)", "(1 2)(4 5 6 7)"}); }
PermGroup q8() { return make(8, {"(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"}); }
PermGroup g225() { return make(10, {"(1 2 3 4 5)(6 7 8 9 10)", "(1 6)(2 7)"}); }
PermGroup s3xc4() {
  return external_direct_product(PermGroup::symmetric(3), PermGroup::cyclic(4));
}
PermGroup c3wrs3() {
  return wreath_product(PermGroup::cyclic(3), PermGroup::symmetric(3));
}

std::uint64_t total_subgroups(const SubgroupLattice& lat) {
  std::uint64_t n = 0;
  for (const auto& c : lat.classes) n += c.class_size;
  return n;
}

std::map<std::uint64_t, int> classes_per_order(const SubgroupLattice& lat) {
  std::map<std::uint64_t, int> out;
  for (const auto& c : lat.classes) ++out[static_cast<std::uint64_t>(c.order)];
  return out;
}

std::multiset<int> orbit_multiset(const PermGroup& g) {
  std::multiset<int> out;
  for (const auto& o : orbits(g)) out.insert(static_cast<int>(o.size()));
  return out;
}

// Full structural check of a lattice against its ambient: genuine subgroups,
// Lagrange, flags consistent, cores re-derived independently.
void check_lattice_invariants(const SubgroupLattice& lat) {
  const PermGroup& amb = lat.ambient;
  REQUIRE(!lat.classes.empty());
  for (std::size_t i = 0; i < lat.classes.size(); ++i) {
    const ClassRecord& c = lat.classes[i];
    CHECK(c.class_id == static_cast<int>(i));
    CHECK(c.order == c.representative.order());
    CHECK(amb.order() % c.order == 0);
    CHECK(amb.contains_group(c.representative));
    const auto& gens = c.representative.generators();
    for (const Perm& a : gens)
      for (const Perm& b : gens) CHECK(c.representative.contains(compose(a, b)));
    CHECK((c.class_size == 1) == c.is_normal);
    CHECK((amb.order() / BigInt(c.class_size)) * BigInt(c.class_size) == amb.order());
    if (c.is_normal) CHECK(is_normal(amb, c.representative));
    CHECK(c.representative.contains_group(c.core_in_ambient));
    CHECK(is_normal(amb, c.core_in_ambient));
    CHECK(c.core_in_ambient.same_group(core(amb, c.representative)));
    if (c.order <= 5000) {
      CHECK(c.is_nilpotent == is_nilpotent(c.representative));
      CHECK(c.is_perfect == is_perfect(c.representative));
    }
  }
  // Canonical id order is nondecreasing in subgroup order.
  for (std::size_t i = 1; i < lat.classes.size(); ++i)
    CHECK(lat.classes[i - 1].order <= lat.classes[i].order);
}

// Class-by-class matching between two lattices of the same ambient, with
// ambient conjugacy as the equivalence.
void check_same_classes(const SubgroupLattice& a, const SubgroupLattice& b) {
  REQUIRE(a.classes.size() == b.classes.size());
  std::vector<bool> used(b.classes.size(), false);
  for (const auto& ca : a.classes) {
    bool matched = false;
    for (std::size_t j = 0; j < b.classes.size(); ++j) {
      const auto& cb = b.classes[j];
      if (used[j] || ca.order != cb.order || ca.class_size != cb.class_size) continue;
      if (orbit_multiset(ca.representative) != orbit_multiset(cb.representative)) continue;
      if (!conjugating_element_in(a.ambient, ca.representative, cb.representative))
        continue;
      CHECK(ca.is_normal == cb.is_normal);
      CHECK(ca.is_nilpotent == cb.is_nilpotent);
      CHECK(ca.is_perfect == cb.is_perfect);
      CHECK(ca.core_in_ambient.same_group(cb.core_in_ambient));
      used[j] = true;
      matched = true;
      break;
    }
    CHECK_MESSAGE(matched, "unmatched class of order ", static_cast<std::uint64_t>(ca.order));
  }
}

}  // namespace

TEST_CASE("brute force oracle: pinned counts") {
  // Sym(3): subgroups 1, three <(i j)>, Alt(3), Sym(3).
  const auto s3 = brute_force_subgroups(PermGroup::symmetric(3));
  CHECK(s3.classes.size() == 4);
  CHECK(total_subgroups(s3) == 6);
  CHECK(s3.method == LatticeMethod::brute_force);
  CHECK(s3.complete);
  CHECK(!s3.completeness_assumed);
  CHECK(classes_per_order(s3) == std::map<std::uint64_t, int>{{1, 1}, {2, 1}, {3, 1}, {6, 1}});

  // Sym(4): 30 subgroups in 11 classes; two classes each of order 2
  // (transpositions vs double transpositions) and three of order 4.
  const auto s4 = brute_force_subgroups(PermGroup::symmetric(4));
  CHECK(s4.classes.size() == 11);
  CHECK(total_subgroups(s4) == 30);
  CHECK(classes_per_order(s4) ==
        std::map<std::uint64_t, int>{
            {1, 1}, {2, 2}, {3, 1}, {4, 3}, {6, 1}, {8, 1}, {12, 1}, {24, 1}});

  // C6: one subgroup per divisor.
  const auto c6 = brute_force_subgroups(PermGroup::cyclic(6));
  CHECK(c6.classes.size() == 4);
  CHECK(total_subgroups(c6) == 4);
  CHECK(classes_per_order(c6) == std::map<std::uint64_t, int>{{1, 1}, {2, 1}, {3, 1}, {6, 1}});

  // Alt(5): 59 subgroups in 9 classes, one per order 1,2,3,4,5,6,10,12,60.
  const auto a5 = brute_force_subgroups(PermGroup::alternating(5));
  CHECK(a5.classes.size() == 9);
  CHECK(total_subgroups(a5) == 59);
  CHECK(classes_per_order(a5) ==
        std::map<std::uint64_t, int>{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1},
                                     {6, 1}, {10, 1}, {12, 1}, {60, 1}});

  CHECK_THROWS_AS(brute_force_subgroups(PermGroup::symmetric(7)), budget_error);
  CHECK_THROWS_AS(brute_force_subgroups(PermGroup::symmetric(6), 100), budget_error);
}

TEST_CASE("brute force oracle: structural invariants") {
  for (const PermGroup& g :
       {PermGroup::symmetric(3), PermGroup::symmetric(4), PermGroup::cyclic(6),
        PermGroup::alternating(5), PermGroup::dihedral(8), q8(), h7(), s3xc4(),
        c3wrs3(), g225()}) {
    const auto lat = brute_force_subgroups(g);
    check_lattice_invariants(lat);
    // The whole group and the trivial group are classes.
    CHECK(lat.classes.front().order == 1);
    CHECK(lat.classes.back().order == g.order());
    for (const auto& c : lat.classes) CHECK(c.parent_class == -1);
  }
}

TEST_CASE("perfect seed catalog") {
  CHECK_THROWS_AS(perfect_seed_catalog(0), input_error);
  CHECK_THROWS_AS(perfect_seed_catalog(11), input_error);
  for (int n = 1; n <= 4; ++n) CHECK(perfect_seed_catalog(n).empty());

  auto orders = [](const std::vector<PermGroup>& v) {
    std::multiset<std::uint64_t> out;
    for (const auto& g : v) out.insert(g.order_u64());
    return out;
  };

  const auto c5 = perfect_seed_catalog(5);
  REQUIRE(c5.size() == 1);
  CHECK(c5[0].order() == 60);
  CHECK(is_transitive(c5[0]));

  const auto c6 = perfect_seed_catalog(6);
  CHECK(orders(c6) == std::multiset<std::uint64_t>{60, 60, 360});

  const auto c7 = perfect_seed_catalog(7);
  CHECK(orders(c7) == std::multiset<std::uint64_t>{60, 60, 168, 360, 2520});

  const auto c8 = perfect_seed_catalog(8);
  CHECK(orders(c8) ==
        std::multiset<std::uint64_t>{60, 60, 168, 168, 360, 1344, 2520, 20160});

  const auto c9 = perfect_seed_catalog(9);
  CHECK(orders(c9) == std::multiset<std::uint64_t>{60, 60, 168, 168, 360, 504,
                                                   1344, 2520, 20160, 181440});

  const auto c10 = perfect_seed_catalog(10);
  CHECK(orders(c10) ==
        std::multiset<std::uint64_t>{60, 60, 60, 60, 168, 168, 360, 360, 504,
                                     960, 1344, 2520, 3600, 20160, 181440, 1814400});

  for (int n = 5; n <= 10; ++n) {
    const auto cat = perfect_seed_catalog(n);
    for (const auto& g : cat) {
      CHECK(g.degree() == n);
      CHECK(g.order() > 1);
      CHECK(is_perfect(g));
    }
    for (std::size_t i = 0; i < cat.size(); ++i)
      for (std::size_t j = i + 1; j < cat.size(); ++j)
        CHECK(!sym_conjugate(cat[i], cat[j]).has_value());
  }

  // Spot identities: the affine order-1344 entry and the order-504 entry are
  // transitive; the two degree-10 intransitive entries act on 5+5 points.
  for (const auto& g : perfect_seed_catalog(8))
    if (g.order() == 1344) CHECK(is_transitive(g));
  for (const auto& g : perfect_seed_catalog(9))
    if (g.order() == 504) CHECK(is_transitive(g));
  int five_five = 0;
  for (const auto& g : perfect_seed_catalog(10)) {
    if (orbit_multiset(g) == std::multiset<int>{5, 5}) ++five_five;
    if (g.order() == 960) CHECK(is_transitive(g));
  }
  CHECK(five_five == 2);
}

TEST_CASE("cyclic extension agrees with the brute-force oracle") {
  for (const PermGroup& g :
       {PermGroup::symmetric(3), PermGroup::symmetric(4), PermGroup::symmetric(5),
        PermGroup::cyclic(6), PermGroup::cyclic(12), PermGroup::dihedral(8), q8(),
        PermGroup::from_generators(6, {Perm::parse_cycles("(1 2)", 6),
                                       Perm::parse_cycles("(3 4)", 6),
                                       Perm::parse_cycles("(5 6)", 6)}),
        PermGroup::alternating(4), PermGroup::alternating(5), h7(), s3xc4(),
        c3wrs3(), g225()}) {
    const auto oracle = brute_force_subgroups(g);
    const auto fast = subgroup_classes(g);
    CHECK(fast.method == LatticeMethod::cyclic_extension);
    CHECK(fast.complete);
    check_lattice_invariants(fast);
    check_same_classes(oracle, fast);
  }
}

TEST_CASE("cyclic extension at the boundary: Sym(6)") {
  const auto oracle = brute_force_subgroups(PermGroup::symmetric(6));
  const auto fast = subgroup_classes(PermGroup::symmetric(6));
  CHECK(fast.complete);
  CHECK(!fast.completeness_assumed);
  check_same_classes(oracle, fast);
}

TEST_CASE("extension parents are prime-index normal inclusions") {
  for (const PermGroup& g :
       {PermGroup::symmetric(4), PermGroup::alternating(5), c3wrs3()}) {
    const auto lat = subgroup_classes(g);
    for (const auto& c : lat.classes) {
      if (c.parent_class < 0) {
        CHECK((c.order == 1 || c.is_perfect));
        continue;
      }
      REQUIRE(c.parent_class < static_cast<int>(lat.classes.size()));
      const auto& parent = lat.class_by_id(c.parent_class);
      const BigInt index = c.order / parent.order;
      CHECK(parent.order * index == c.order);
      const std::uint64_t p = static_cast<std::uint64_t>(index);
      bool prime = p >= 2;
      for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) prime = false;
      CHECK(prime);
      CHECK(c.representative.contains_group(parent.representative));
      CHECK(is_normal(c.representative, parent.representative));
    }
  }
}

TEST_CASE("alternating ambients split symmetric classes") {
  // Alt(6) keeps the point stabilizer and the transitive copy of Alt(5)
  // as separate classes with different orbit patterns.
  const auto a6 = subgroup_classes(PermGroup::alternating(6));
  std::vector<const ClassRecord*> sixty;
  for (const auto& c : a6.classes)
    if (c.order == 60) sixty.push_back(&c);
  REQUIRE(sixty.size() == 2);
  CHECK(orbit_multiset(sixty[0]->representative) !=
        orbit_multiset(sixty[1]->representative));
  check_same_classes(brute_force_subgroups(PermGroup::alternating(6)), a6);

  // Alt(7) has two classes of simple order-168 subgroups, fused in Sym(7).
  const auto a7 = subgroup_classes(PermGroup::alternating(7));
  CHECK(a7.completeness_assumed);
  std::vector<const ClassRecord*> simple168;
  for (const auto& c : a7.classes)
    if (c.order == 168 && c.is_perfect) simple168.push_back(&c);
  REQUIRE(simple168.size() == 2);
  CHECK(sym_conjugate(simple168[0]->representative, simple168[1]->representative)
            .has_value());
  CHECK(!conjugating_element_in(PermGroup::alternating(7),
                                simple168[0]->representative,
                                simple168[1]->representative)
             .has_value());
}

TEST_CASE("wreath product: normal classes inside the base") {
  const auto w = c3wrs3();
  const PermGroup base = PermGroup::from_generators(
      9, {Perm::parse_cycles("(1 2 3)", 9), Perm::parse_cycles("(4 5 6)", 9),
          Perm::parse_cycles("(7 8 9)", 9)});
  REQUIRE(base.order() == 27);
  const auto lat = subgroup_classes(w);
  const auto normals = normal_subgroup_classes(lat);
  std::vector<const ClassRecord*> in_base;
  for (const auto* c : normals)
    if (c->order > 1 && base.contains_group(c->representative)) in_base.push_back(c);
  REQUIRE(in_base.size() == 3);
  std::multiset<std::uint64_t> got;
  for (const auto* c : in_base) got.insert(static_cast<std::uint64_t>(c->order));
  CHECK(got == std::multiset<std::uint64_t>{3, 9, 27});
  for (const auto* c : in_base) {
    if (c->order == 3) {
      const Perm diag = Perm::parse_cycles("(1 2 3)(4 5 6)(7 8 9)", 9);
      CHECK(c->representative.same_group(PermGroup::from_generators(9, {diag})));
    }
    if (c->order == 9) {
      const PermGroup sum_zero = PermGroup::from_generators(
          9, {Perm::parse_cycles("(1 2 3)(4 6 5)", 9),
              Perm::parse_cycles("(4 5 6)(7 9 8)", 9)});
      CHECK(c->representative.same_group(sum_zero));
    }
  }
}

TEST_CASE("normal subgroup classes filter") {
  const auto s4 = subgroup_classes(PermGroup::symmetric(4));
  const auto normals = normal_subgroup_classes(s4);
  std::multiset<std::uint64_t> got;
  for (const auto* c : normals) got.insert(static_cast<std::uint64_t>(c->order));
  CHECK(got == std::multiset<std::uint64_t>{1, 4, 12, 24});

  const auto a5 = subgroup_classes(PermGroup::alternating(5));
  CHECK(normal_subgroup_classes(a5).size() == 2);
}

TEST_CASE("lattice cache: round trip, staleness, tampering") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mindeg-lattice-cache-test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const PermGroup s4 = PermGroup::symmetric(4);
  const std::string spec = canonical_spec(s4);
  const auto lat = subgroup_classes(s4);
  save_lattice_cache(lat, dir.string(), spec);

  const auto path = lattice_cache_path(dir.string(), spec);
  REQUIRE(fs::exists(path));

  auto loaded = load_lattice_cache(s4, dir.string(), spec);
  REQUIRE(loaded.has_value());
  CHECK(loaded->classes.size() == lat.classes.size());
  CHECK(loaded->complete == lat.complete);
  CHECK(lattice_to_text(*loaded, spec) == lattice_to_text(lat, spec));
  check_same_classes(lat, *loaded);

  // Flip one byte: the checksum makes the file unreadable.
  std::string text = lattice_to_text(lat, spec);
  {
    std::string bad = text;
    const auto pos = bad.find("order = 24");
    REQUIRE(pos != std::string::npos);
    bad[pos + 8] = '1';
    std::ofstream(path, std::ios::binary) << bad;
  }
  CHECK(!load_lattice_cache(s4, dir.string(), spec).has_value());

  // Consistent checksum but a lying order field: revalidation rejects it.
  {
    auto parsed = StanzaFile::from_text(text);
    for (auto& st : parsed.stanzas)
      for (auto& [k, v] : st.fields)
        if (k == "order" && v == "24") v = "12";
    CHECK_THROWS_AS(lattice_from_text(parsed.to_text(), s4, spec), input_error);
  }

  // A different engine version is stale, not migrated.
  {
    auto parsed = StanzaFile::from_text(text);
    for (auto& st : parsed.stanzas)
      for (auto& [k, v] : st.fields)
        if (k == "engine") v = "0.0.0";
    std::ofstream(path, std::ios::binary) << parsed.to_text();
    CHECK(!load_lattice_cache(s4, dir.string(), spec).has_value());
  }

  fs::remove_all(dir);
}

TEST_CASE("generation parallelism does not change the result") {
  LatticeOptions seq;
  seq.jobs = 1;
  LatticeOptions par;
  par.jobs = 4;
  for (const PermGroup& g : {PermGroup::symmetric(5), c3wrs3()}) {
    const std::string spec = canonical_spec(g);
    CHECK(lattice_to_text(subgroup_classes(g, seq), spec) ==
          lattice_to_text(subgroup_classes(g, par), spec));
  }
}

TEST_CASE("budget exhaustion yields a usable partial lattice") {
  LatticeOptions small;
  small.max_classes = 5;
  const auto lat = subgroup_classes(PermGroup::symmetric(4), small);
  CHECK(!lat.complete);
  CHECK(lat.classes.size() <= 5);
  for (const auto& c : lat.classes) {
    CHECK(lat.ambient.contains_group(c.representative));
    CHECK(c.order == c.representative.order());
  }
}

TEST_CASE("canonical spec round trips through the parser surface") {
  const PermGroup g = h7();
  const std::string spec = canonical_spec(g);
  CHECK(spec.rfind("deg 7:", 0) == 0);
  CHECK(canonical_spec(PermGroup::trivial(3)) == "deg 3:");
}
