#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mindeg/actions.hpp"
#include "mindeg/errors.hpp"
#include "mindeg/structure.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace mindeg;

namespace {

PermGroup make(int degree, std::vector<const char*> cycles) {
  std::vector<Perm> gens;
  for (const char* c : cycles) gens.push_back(Perm::parse_cycles(c, degree));
  return PermGroup::from_generators(degree, std::move(gens));
}

// The order-12 subdirect group on 7 points and its shifted relatives.
PermGroup h7() { return make(7, {"(1 2 3)", "(1 2)(4 5 6 7)"}); }
PermGroup g8() { return make(8, {"(1 2 3)", "(1 3)(4 5 6 7)"}); }
PermGroup g9a() { return make(9, {"(1 2 3)", "(1 3)(4 5 6 7)", "(8 9)"}); }

// Order 56 and 168 primitive groups on 8 points.
PermGroup k8() {
  return make(8, {"(1 2)(3 4)(5 6)(7 8)", "(1 3)(2 4)(5 7)(6 8)",
                  "(1 5)(2 6)(3 7)(4 8)", "(2 3 5 4 7 8 6)"});
}
PermGroup l8() {
  return make(8, {"(1 2)(3 4)(5 6)(7 8)", "(1 3)(2 4)(5 7)(6 8)",
                  "(1 5)(2 6)(3 7)(4 8)", "(2 3 5 4 7 8 6)", "(3 5 7)(4 6 8)"});
}

// Quaternion group in its regular representation.
PermGroup q8() {
  return make(8, {"(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"});
}

PermGroup v4() { return make(4, {"(1 2)", "(3 4)"}); }

std::set<Perm> element_set(const PermGroup& g) {
  const auto els = g.elements(400'000);
  return std::set<Perm>(els.begin(), els.end());
}

std::vector<Perm> sym_elements(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(Perm::from_images(im));
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

int fixed_count(const Perm& p) {
  int c = 0;
  for (int i = 0; i < p.degree(); ++i)
    if (p[i] == i) ++c;
  return c;
}

Perm random_perm(int n, std::mt19937& rng) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::shuffle(im.begin(), im.end(), rng);
  return Perm::from_images(std::move(im));
}

PermGroup random_group(int degree, std::mt19937& rng) {
  return PermGroup::from_generators(degree,
                                    {random_perm(degree, rng),
                                     random_perm(degree, rng)});
}

}  // namespace

TEST_CASE("centralizer in Sym: pinned values") {
  CHECK(centralizer_in_sym(h7()).same_group(make(7, {"(4 5 6 7)"})));
  CHECK(centralizer_in_sym(g8()).same_group(make(8, {"(4 5 6 7)"})));
  CHECK(centralizer_in_sym(g9a()).same_group(make(9, {"(4 5 6 7)", "(8 9)"})));

  REQUIRE(k8().order() == 56);
  REQUIRE(l8().order() == 168);
  CHECK(centralizer_in_sym(k8()).is_trivial());
  CHECK(centralizer_in_sym(l8()).is_trivial());
}

TEST_CASE("centralizer of a transitive group is semi-regular") {
  const PermGroup groups[] = {PermGroup::cyclic(4),  PermGroup::dihedral(8),
                              PermGroup::symmetric(4), PermGroup::alternating(5),
                              k8(),                  q8()};
  for (const PermGroup& g : groups) {
    const PermGroup c = centralizer_in_sym(g);
    const PermGroup h = g.point_stabilizer(0);
    CHECK(c.order() * h.order() == normalizer(g, h).order());
    for (const Perm& x : c.elements(10'000))
      if (!x.is_identity()) CHECK(fixed_count(x) == 0);
  }
}

TEST_CASE("centralizer in Sym matches filtering the whole symmetric group") {
  std::mt19937 rng(414001);
  for (int degree = 4; degree <= 6; ++degree) {
    const auto sym = sym_elements(degree);
    for (int trial = 0; trial < 20; ++trial) {
      const PermGroup g = random_group(degree, rng);
      std::set<Perm> expect;
      for (const Perm& x : sym) {
        bool commutes = true;
        for (const Perm& s : g.generators())
          if (compose(x, s) != compose(s, x)) {
            commutes = false;
            break;
          }
        if (commutes) expect.insert(x);
      }
      CHECK(element_set(centralizer_in_sym(g)) == expect);
    }
  }
}

TEST_CASE("normalizer: pinned values and errors") {
  const PermGroup h = h7();
  CHECK(normalizer(h, make(7, {"(1 2 3)"})).same_group(h));
  const PermGroup h3 = make(7, {"(1 2)(4 5 6 7)"});
  CHECK(normalizer(h, h3).same_group(h3));
  CHECK(normalizer(PermGroup::symmetric(3), PermGroup::alternating(3))
            .same_group(PermGroup::symmetric(3)));

  CHECK_THROWS_AS(normalizer(h, make(4, {"(1 2)"})), input_error);
  CHECK_THROWS_AS(normalizer(PermGroup::alternating(4), make(4, {"(1 2)"})),
                  input_error);
}

TEST_CASE("normalizer inside large natural ambients") {
  const PermGroup s9 = PermGroup::symmetric(9);
  const PermGroup a9 = PermGroup::alternating(9);
  const PermGroup c9 = PermGroup::cyclic(9);
  const PermGroup c3 = make(9, {"(1 2 3)"});

  // Full cycle: the normalizer is the holomorph, order 9 * phi(9). Its
  // order-6 automorphism part happens to consist of even permutations, so
  // the alternating ambient keeps all of it.
  CHECK(normalizer(s9, c9).order() == 54);
  CHECK(normalizer(a9, c9).order() == 54);

  CHECK(normalizer(s9, c3).order() == 4320);   // Sym(3) x Sym(6)
  CHECK(normalizer(a9, c3).order() == 2160);   // its even half

  // Random-sample the defining property against a Sylow 3-subgroup.
  const PermGroup p3 = sylow_subgroup(a9, 3);
  REQUIRE(p3.order() == 81);
  const PermGroup n = normalizer(a9, p3);
  CHECK(n.contains_group(p3));
  CHECK(n.order() % 81 == 0);
  std::mt19937 rng(414002);
  for (int trial = 0; trial < 200; ++trial) {
    Perm x = random_perm(9, rng);
    if (!x.is_even()) {
      // flip parity by swapping two image slots
      std::vector<int> im(9);
      for (int i = 0; i < 9; ++i) im[i] = x[i];
      std::swap(im[0], im[1]);
      x = Perm::from_images(std::move(im));
    }
    bool normalizes = true;
    for (const Perm& s : p3.generators())
      if (!p3.contains(s.conjugated_by(x))) {
        normalizes = false;
        break;
      }
    CHECK(n.contains(x) == normalizes);
  }
}

TEST_CASE("core: pinned values and a brute-force oracle") {
  const PermGroup s4 = PermGroup::symmetric(4);
  CHECK(core(s4, s4.point_stabilizer(0)).is_trivial());

  // Oracle: intersect the conjugates of D8 over all 24 elements directly.
  const PermGroup d8 = make(4, {"(1 2 3 4)", "(1 3)"});
  REQUIRE(d8.order() == 8);
  std::set<Perm> acc = element_set(d8);
  for (const Perm& x : s4.elements(100)) {
    std::set<Perm> conj;
    for (const Perm& e : d8.elements(100)) conj.insert(e.conjugated_by(x));
    std::set<Perm> both;
    for (const Perm& e : acc)
      if (conj.count(e)) both.insert(e);
    acc = std::move(both);
  }
  const PermGroup expect = make(4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  REQUIRE(element_set(expect) == acc);
  CHECK(core(s4, d8).same_group(expect));

  CHECK(core(h7(), h7()).same_group(h7()));
}

TEST_CASE("core matches brute-force conjugate intersection on random pairs") {
  std::mt19937 rng(414003);
  for (int degree = 4; degree <= 5; ++degree) {
    for (int trial = 0; trial < 8; ++trial) {
      const PermGroup g = random_group(degree, rng);
      const auto els = g.elements(100'000);
      std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
      const PermGroup h = PermGroup::from_generators(
          degree, {els[pick(rng)], els[pick(rng)]});
      std::set<Perm> acc = element_set(h);
      for (const Perm& x : els) {
        std::set<Perm> conj;
        for (const Perm& e : element_set(h)) conj.insert(e.conjugated_by(x));
        std::set<Perm> both;
        for (const Perm& e : acc)
          if (conj.count(e)) both.insert(e);
        acc = std::move(both);
      }
      CHECK(element_set(core(g, h)) == acc);
    }
  }
}

TEST_CASE("derived series, perfect residual, solvability") {
  const PermGroup s4 = PermGroup::symmetric(4);
  CHECK(derived_subgroup(s4).same_group(PermGroup::alternating(4)));
  const auto series = derived_series(s4);
  REQUIRE(series.size() == 4);
  CHECK(series[0].order() == 24);
  CHECK(series[1].order() == 12);
  CHECK(series[2].order() == 4);
  CHECK(series[3].order() == 1);

  const PermGroup a5 = PermGroup::alternating(5);
  CHECK(perfect_residual(a5).same_group(a5));
  CHECK(perfect_residual(s4).is_trivial());
  CHECK(is_perfect(a5));
  CHECK(!is_perfect(s4));
  CHECK(is_solvable(s4));
  CHECK(is_solvable(k8()));
  CHECK(!is_solvable(a5));
  CHECK(is_solvable(l8()));
}

TEST_CASE("derived subgroup equals the closure of all commutators") {
  std::mt19937 rng(414004);
  for (int degree = 4; degree <= 6; ++degree)
    for (int trial = 0; trial < 10; ++trial) {
      const PermGroup g = random_group(degree, rng);
      const auto els = g.elements(100'000);
      std::vector<Perm> comms;
      for (const Perm& a : els)
        for (const Perm& b : g.generators()) comms.push_back(commutator(a, b));
      CHECK(derived_subgroup(g).same_group(
          PermGroup::from_generators(degree, std::move(comms))));
    }
}

TEST_CASE("center and abelianness") {
  CHECK(center(PermGroup::symmetric(4)).is_trivial());
  CHECK(center(PermGroup::dihedral(8)).same_group(make(4, {"(1 3)(2 4)"})));
  CHECK(center(q8()).order() == 2);
  CHECK(center(PermGroup::cyclic(6)).same_group(PermGroup::cyclic(6)));
  CHECK(is_abelian(PermGroup::cyclic(6)));
  CHECK(is_abelian(v4()));
  CHECK(!is_abelian(PermGroup::symmetric(3)));
  CHECK(!is_abelian(q8()));

  std::mt19937 rng(414005);
  for (int trial = 0; trial < 15; ++trial) {
    const PermGroup g = random_group(5, rng);
    std::set<Perm> expect;
    for (const Perm& x : g.elements(100'000)) {
      bool commutes = true;
      for (const Perm& s : g.generators())
        if (compose(x, s) != compose(s, x)) {
          commutes = false;
          break;
        }
      if (commutes) expect.insert(x);
    }
    CHECK(element_set(center(g)) == expect);
  }
}

TEST_CASE("nilpotency by Sylow normality") {
  CHECK(is_nilpotent(q8()));
  CHECK(is_nilpotent(PermGroup::dihedral(8)));
  CHECK(is_nilpotent(PermGroup::cyclic(6)));
  CHECK(is_nilpotent(v4()));
  CHECK(!is_nilpotent(h7()));
  CHECK(!is_nilpotent(PermGroup::symmetric(3)));
  CHECK(!is_nilpotent(PermGroup::symmetric(4)));
  CHECK(!is_nilpotent(PermGroup::alternating(4)));
  CHECK(!is_nilpotent(k8()));
}

namespace {

// Independent route to the normal subgroups: a subset is normal exactly
// when it is a union of conjugacy classes (with identity) that is closed
// under products.
std::vector<std::set<Perm>> brute_normal_subgroups(const PermGroup& g) {
  const auto els = g.elements(100'000);
  std::set<Perm> seen;
  std::vector<std::set<Perm>> classes;
  std::set<Perm> id_class;
  for (const Perm& e : els) {
    if (seen.count(e)) continue;
    std::set<Perm> cls;
    for (const Perm& x : els) cls.insert(e.conjugated_by(x));
    for (const Perm& c : cls) seen.insert(c);
    if (e.is_identity())
      id_class = cls;
    else
      classes.push_back(std::move(cls));
  }
  const int k = static_cast<int>(classes.size());
  REQUIRE(k <= 10);
  std::vector<std::set<Perm>> out;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::set<Perm> u = id_class;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) u.insert(classes[i].begin(), classes[i].end());
    bool closed = true;
    for (const Perm& a : u) {
      for (const Perm& b : u)
        if (!u.count(compose(a, b))) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

TEST_CASE("normal subgroups agree with the class-union oracle") {
  const PermGroup groups[] = {PermGroup::symmetric(4), PermGroup::cyclic(6),
                              PermGroup::dihedral(8),  q8(),
                              h7(),                    PermGroup::alternating(4),
                              PermGroup::alternating(5), k8()};
  for (const PermGroup& g : groups) {
    auto expect = brute_normal_subgroups(g);
    const auto got = normal_subgroups(g);
    REQUIRE(got.size() == expect.size());
    for (const PermGroup& n : got) {
      CHECK(is_normal(g, n));
      const auto mine = element_set(n);
      CHECK(std::count(expect.begin(), expect.end(), mine) == 1);
    }
  }
}

TEST_CASE("minimal normal subgroups") {
  const auto s4_min = minimal_normal_subgroups(PermGroup::symmetric(4));
  REQUIRE(s4_min.size() == 1);
  CHECK(s4_min[0].same_group(make(4, {"(1 2)(3 4)", "(1 3)(2 4)"})));

  const auto c6_min = minimal_normal_subgroups(PermGroup::cyclic(6));
  REQUIRE(c6_min.size() == 2);
  CHECK(c6_min[0].order() == 2);
  CHECK(c6_min[1].order() == 3);

  const auto a5_min = minimal_normal_subgroups(PermGroup::alternating(5));
  REQUIRE(a5_min.size() == 1);
  CHECK(a5_min[0].same_group(PermGroup::alternating(5)));

  const auto k_min = minimal_normal_subgroups(k8());
  REQUIRE(k_min.size() == 1);
  CHECK(k_min[0].order() == 8);

  for (const PermGroup& g : {PermGroup::dihedral(8), q8()}) {
    const auto mins = minimal_normal_subgroups(g);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].same_group(center(g)));
  }
}

TEST_CASE("sylow subgroups") {
  const PermGroup s4 = PermGroup::symmetric(4);
  const PermGroup syl2 = sylow_subgroup(s4, 2);
  CHECK(syl2.order() == 8);
  CHECK(s4.contains_group(syl2));
  CHECK(is_isomorphic(syl2, PermGroup::dihedral(8)) == IsoVerdict::yes);
  CHECK(sylow_subgroup(s4, 3).order() == 3);

  const PermGroup syl7 = sylow_subgroup(k8(), 7);
  CHECK(syl7.order() == 7);
  CHECK(is_abelian(syl7));
  CHECK(k8().contains_group(syl7));
  CHECK(sylow_subgroup(k8(), 2).order() == 8);

  CHECK(sylow_subgroup(PermGroup::cyclic(6), 5).is_trivial());

  const PermGroup a5_syl2 = sylow_subgroup(PermGroup::alternating(5), 2);
  CHECK(a5_syl2.order() == 4);
  CHECK(is_abelian(a5_syl2));
  CHECK(PermGroup::alternating(5).contains_group(a5_syl2));

  const PermGroup a9_syl3 = sylow_subgroup(PermGroup::alternating(9), 3);
  CHECK(a9_syl3.order() == 81);
  CHECK(PermGroup::alternating(9).contains_group(a9_syl3));
  const PermGroup s9_syl2 = sylow_subgroup(PermGroup::symmetric(9), 2);
  CHECK(s9_syl2.order() == 128);
  CHECK(PermGroup::symmetric(9).contains_group(s9_syl2));

  const PermGroup h = h7();
  CHECK(sylow_subgroup(h, 2).order() == 4);
  CHECK(!is_normal(h, sylow_subgroup(h, 2)));
  CHECK(sylow_subgroup(h, 3).order() == 3);
  CHECK(is_normal(h, sylow_subgroup(h, 3)));

  CHECK_THROWS_AS(sylow_subgroup(s4, 4), input_error);
  CHECK_THROWS_AS(sylow_subgroup(s4, 33), input_error);
}

TEST_CASE("isomorphism verdicts") {
  CHECK(is_isomorphic(PermGroup::cyclic(4), v4()) == IsoVerdict::no);
  CHECK(is_isomorphic(q8(), PermGroup::dihedral(8)) == IsoVerdict::no);
  CHECK(is_isomorphic(h7(), PermGroup::alternating(4)) == IsoVerdict::no);

  // Same order-56 semidirect product, rebuilt on 15 points with the cyclic
  // part acting partly on a disjoint 7-cycle.
  const PermGroup k15 = make(
      15, {"(1 2)(3 4)(5 6)(7 8)", "(1 3)(2 4)(5 7)(6 8)",
           "(1 5)(2 6)(3 7)(4 8)", "(2 3 5 4 7 8 6)(9 10 11 12 13 14 15)"});
  REQUIRE(k15.order() == 56);
  CHECK(is_isomorphic(k8(), k15) == IsoVerdict::yes);

  // a^3 = b^4 = 1, a^b = a^{-1} realized with different generators.
  const PermGroup twisted = make(7, {"(1 2 3)", "(2 3)(4 5 6 7)"});
  REQUIRE(twisted.order() == 12);
  CHECK(is_isomorphic(h7(), twisted) == IsoVerdict::yes);

  // Exponent-3 groups of order 27: same order histogram, different class
  // sizes, so the screen alone must separate them.
  const PermGroup heisenberg =
      make(9, {"(1 4 7)(2 5 8)(3 6 9)", "(4 5 6)(7 9 8)"});
  const PermGroup elem27 = make(9, {"(1 2 3)", "(4 5 6)", "(7 8 9)"});
  REQUIRE(heisenberg.order() == 27);
  REQUIRE(elem27.order() == 27);
  CHECK(element_order_histogram(heisenberg) == element_order_histogram(elem27));
  CHECK(is_isomorphic(heisenberg, elem27) == IsoVerdict::no);

  // Reflexive and symmetric on a mixed bag.
  const PermGroup bag[] = {PermGroup::symmetric(4), h7(), q8(), k8()};
  for (const PermGroup& g : bag) CHECK(is_isomorphic(g, g) == IsoVerdict::yes);
  for (const PermGroup& g : bag)
    for (const PermGroup& h : bag)
      CHECK(is_isomorphic(g, h) == is_isomorphic(h, g));

  // A conjugate copy is isomorphic, and the transporter agrees.
  std::mt19937 rng(414006);
  const PermGroup g = g9a();
  const Perm sigma = random_perm(9, rng);
  const PermGroup conj = g.conjugated_by(sigma);
  CHECK(is_isomorphic(g, conj) == IsoVerdict::yes);
  CHECK(sym_conjugate(g, conj).has_value());
}

TEST_CASE("Sym-conjugacy transporter") {
  const PermGroup a = make(4, {"(1 2)"});
  const PermGroup b = make(4, {"(3 4)"});
  const auto t = sym_conjugate(a, b);
  REQUIRE(t.has_value());
  CHECK(a.conjugated_by(*t).same_group(b));

  CHECK(!sym_conjugate(make(4, {"(1 2)(3 4)"}), a).has_value());

  const PermGroup h = h7();
  const PermGroup hc = h.conjugated_by(Perm::parse_cycles("(1 7)(2 6)", 7));
  const auto t2 = sym_conjugate(h, hc);
  REQUIRE(t2.has_value());
  CHECK(h.conjugated_by(*t2).same_group(hc));

  CHECK_THROWS_AS(sym_conjugate(a, h), input_error);
}

TEST_CASE("intersection") {
  const PermGroup g = g8();
  const PermGroup c = centralizer_in_sym(g);
  CHECK(intersection(c, g).same_group(make(8, {"(4 6)(5 7)"})));

  const PermGroup g9 = g9a();
  const PermGroup c9 = centralizer_in_sym(g9);
  CHECK(intersection(c9, g9).same_group(make(9, {"(4 6)(5 7)", "(8 9)"})));

  CHECK(intersection(h7(), h7()).same_group(h7()));
  CHECK(intersection(make(3, {"(1 2)"}), make(3, {"(1 3)"})).is_trivial());
  CHECK_THROWS_AS(intersection(h7(), make(4, {"(1 2)"})), input_error);

  std::mt19937 rng(414007);
  for (int trial = 0; trial < 15; ++trial) {
    const PermGroup x = random_group(5, rng);
    const PermGroup y = random_group(5, rng);
    std::set<Perm> expect;
    const auto ys = element_set(y);
    for (const Perm& e : x.elements(100'000))
      if (ys.count(e)) expect.insert(e);
    CHECK(element_set(intersection(x, y)) == expect);
    CHECK(intersection(x, y).same_group(intersection(y, x)));
  }
}

TEST_CASE("direct decompositions") {
  const auto dv = direct_decompositions(v4());
  CHECK(dv.size() == 3);
  bool named_pair = false;
  for (const auto& d : dv) {
    CHECK(!d.left.is_trivial());
    CHECK(!d.right.is_trivial());
    CHECK(d.left.order() * d.right.order() == 4);
    CHECK(intersection(d.left, d.right).is_trivial());
    for (const Perm& a : d.left.generators())
      for (const Perm& b : d.right.generators())
        CHECK(compose(a, b) == compose(b, a));
    std::vector<Perm> both = d.left.generators();
    for (const Perm& b : d.right.generators()) both.push_back(b);
    CHECK(PermGroup::from_generators(4, both).same_group(v4()));
    const PermGroup p = make(4, {"(1 2)"});
    const PermGroup q = make(4, {"(3 4)"});
    if ((d.left.same_group(p) && d.right.same_group(q)) ||
        (d.left.same_group(q) && d.right.same_group(p)))
      named_pair = true;
  }
  CHECK(named_pair);

  CHECK(direct_decompositions(PermGroup::symmetric(3)).empty());
  CHECK(direct_decompositions(PermGroup::symmetric(4)).empty());
  CHECK(direct_decompositions(PermGroup::dihedral(8)).empty());
  CHECK(direct_decompositions(q8()).empty());

  const auto dc6 = direct_decompositions(PermGroup::cyclic(6));
  REQUIRE(dc6.size() == 1);
  CHECK(dc6[0].left.order() == 2);
  CHECK(dc6[0].right.order() == 3);
}

TEST_CASE("element class representatives") {
  const auto s4_reps = element_class_reps(PermGroup::symmetric(4));
  CHECK(s4_reps.size() == 5);
  const auto a4_reps = element_class_reps(PermGroup::alternating(4));
  CHECK(a4_reps.size() == 4);
  const auto a5_reps = element_class_reps(PermGroup::alternating(5));
  CHECK(a5_reps.size() == 5);

  // Natural-action shortcuts against plain enumeration.
  for (const PermGroup& g :
       {PermGroup::symmetric(4), PermGroup::symmetric(5),
        PermGroup::alternating(4), PermGroup::alternating(5), h7(), q8(),
        k8()}) {
    const auto reps = element_class_reps(g);
    for (const Perm& r : reps) CHECK(g.contains(r));
    std::set<Perm> seen;
    std::size_t covered = 0;
    const auto els = g.elements(100'000);
    for (const Perm& r : reps) {
      REQUIRE(!seen.count(r));
      for (const Perm& x : els) seen.insert(r.conjugated_by(x));
      const std::size_t now = seen.size();
      CHECK(now > covered);
      covered = now;
    }
    CHECK(covered == els.size());
    for (std::size_t i = 1; i < reps.size(); ++i) {
      const auto oa = reps[i - 1].order(), ob = reps[i].order();
      CHECK((oa < ob || (oa == ob && reps[i - 1] < reps[i])));
    }
  }
}

TEST_CASE("element order histograms") {
  const auto s5 = element_order_histogram(PermGroup::symmetric(5));
  std::map<std::uint64_t, std::uint64_t> expect_s5;
  for (const Perm& x : PermGroup::symmetric(5).elements(200)) ++expect_s5[x.order()];
  CHECK(s5 == expect_s5);

  const auto a5 = element_order_histogram(PermGroup::alternating(5));
  std::map<std::uint64_t, std::uint64_t> expect_a5{
      {1, 1}, {2, 15}, {3, 20}, {5, 24}};
  CHECK(a5 == expect_a5);

  for (const PermGroup& g : {h7(), q8(), k8()}) {
    std::map<std::uint64_t, std::uint64_t> expect;
    for (const Perm& x : g.elements(10'000)) ++expect[x.order()];
    CHECK(element_order_histogram(g) == expect);
  }

  std::uint64_t total = 0;
  for (const auto& [ord, n] : element_order_histogram(PermGroup::symmetric(9)))
    total += n;
  CHECK(total == 362880);
}
