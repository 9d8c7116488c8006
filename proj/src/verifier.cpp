#include "mindeg/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <utility>

#include "mindeg/actions.hpp"
#include "mindeg/constructions.hpp"
#include "mindeg/errors.hpp"
#include "mindeg/group_spec.hpp"
#include "mindeg/structure.hpp"
#include "mindeg/version.hpp"

namespace mindeg {
namespace {

// Work-stealing loop over [0, count). Results must be written to
// preallocated per-index slots so the merge order never depends on
// scheduling. First exception wins and is rethrown after the join.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || stop.load()) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          stop.store(true);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

Perm transposition_on(int degree, int a, int b) {
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  std::swap(im[a], im[b]);
  return Perm::from_images(std::move(im));
}

Perm three_cycle_on(int degree, int a, int b, int c) {
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  im[a] = b;
  im[b] = c;
  im[c] = a;
  return Perm::from_images(std::move(im));
}

// Sym on the given points, fixing everything else.
PermGroup young_on(int degree, const std::vector<int>& pts) {
  std::vector<Perm> gens;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    gens.push_back(transposition_on(degree, pts[i], pts[i + 1]));
  return PermGroup::from_generators(degree, std::move(gens));
}

// Alt on the given points (at least 3), fixing everything else.
PermGroup alternating_on(int degree, const std::vector<int>& pts) {
  std::vector<Perm> gens;
  for (std::size_t i = 0; i + 2 < pts.size(); ++i)
    gens.push_back(three_cycle_on(degree, pts[i], pts[i + 1], pts[i + 2]));
  return PermGroup::from_generators(degree, std::move(gens));
}

// Image of g on an invariant point set, relabeled to 0..k-1 in the order
// the points are listed. Generator-aligned, so the result is deterministic.
PermGroup restriction(const PermGroup& g, const std::vector<int>& pts) {
  std::vector<int> where(g.degree(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) where[pts[i]] = static_cast<int>(i);
  std::vector<Perm> gens;
  for (const Perm& p : g.generators()) {
    std::vector<int> im(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const int y = p[pts[i]];
      if (where[y] < 0) throw input_error("restriction: point set is not invariant");
      im[i] = where[y];
    }
    gens.push_back(Perm::from_images(std::move(im)));
  }
  return PermGroup::from_generators(static_cast<int>(pts.size()), std::move(gens));
}

bool is_small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string sym_spec(int degree) { return "S" + std::to_string(degree); }

std::vector<std::vector<int>> sorted_orbits(const PermGroup& g) {
  auto obs = orbits(g);
  for (auto& o : obs) std::sort(o.begin(), o.end());
  std::sort(obs.begin(), obs.end());
  return obs;
}

}  // namespace

VerificationReport sweep_products(const SubgroupLattice& lat,
                                  const LatticeOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!is_natural_symmetric(lat.ambient))
    throw input_error("product sweep needs the full symmetric group as ambient");

  VerificationReport r;
  r.degree = lat.ambient.degree();
  r.classes_total = lat.classes.size();
  r.lattice_complete = lat.complete;
  r.completeness_assumed = lat.completeness_assumed;
  r.lattice_checksum = fnv1a64(lattice_to_text(lat, sym_spec(r.degree)));

  struct Slot {
    bool minimal = false;
    bool exceptional = false;
    std::size_t decomps = 0;
    std::vector<SweepViolation> violations;
  };
  std::vector<Slot> slots(lat.classes.size());
  const auto target = static_cast<std::uint64_t>(r.degree);

  parallel_for(lat.classes.size(), opt.jobs, [&](std::size_t i) {
    const auto& rec = lat.classes[i];
    Slot& s = slots[i];
    if (mu_value(rec.representative, opt) != target) return;
    s.minimal = true;
    s.exceptional = !in_wright_class(rec.representative, opt).has_value();
    for (const auto& d : direct_decompositions(rec.representative)) {
      ++s.decomps;
      const std::uint64_t ml = mu_value(d.left, opt);
      const std::uint64_t mr = mu_value(d.right, opt);
      if (ml + mr == target) continue;
      SweepViolation v;
      v.class_id = rec.class_id;
      v.group_spec = canonical_spec(rec.representative);
      v.left_spec = canonical_spec(d.left);
      v.right_spec = canonical_spec(d.right);
      v.mu_group = target;
      v.mu_left = ml;
      v.mu_right = mr;
      v.group_cert = mu(subgroup_classes(rec.representative, opt));
      v.left_cert = mu(subgroup_classes(d.left, opt));
      v.right_cert = mu(subgroup_classes(d.right, opt));
      s.violations.push_back(std::move(v));
    }
  });

  for (std::size_t i = 0; i < slots.size(); ++i) {
    Slot& s = slots[i];
    if (!s.minimal) continue;
    ++r.classes_minimally_embedded;
    r.decompositions_checked += s.decomps;
    if (s.exceptional) r.exceptional_classes.push_back(lat.classes[i].class_id);
    for (auto& v : s.violations) r.violations.push_back(std::move(v));
  }

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

VerificationReport sweep_products(int degree, const LatticeOptions& opt) {
  return sweep_products(subgroup_classes(PermGroup::symmetric(degree), opt), opt);
}

std::vector<int> exceptional_catalog(const SubgroupLattice& lat,
                                     const LatticeOptions& opt) {
  if (!is_natural_symmetric(lat.ambient))
    throw input_error("exceptional catalog needs the full symmetric group as ambient");
  if (!lat.complete)
    throw budget_error("exceptional catalog over an incomplete lattice would miss classes");

  const auto target = static_cast<std::uint64_t>(lat.ambient.degree());
  std::vector<char> mark(lat.classes.size(), 0);
  parallel_for(lat.classes.size(), opt.jobs, [&](std::size_t i) {
    const auto& rec = lat.classes[i];
    if (mu_value(rec.representative, opt) == target &&
        !in_wright_class(rec.representative, opt).has_value())
      mark[i] = 1;
  });

  std::vector<int> ids;
  for (std::size_t i = 0; i < mark.size(); ++i)
    if (mark[i]) ids.push_back(lat.classes[i].class_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<int> exceptional_catalog(int degree, const LatticeOptions& opt) {
  return exceptional_catalog(subgroup_classes(PermGroup::symmetric(degree), opt), opt);
}

bool L1Report::all_pass() const {
  for (const auto& c : clauses)
    if (c.failed > 0) return false;
  return true;
}

L1Report check_L1(const PermGroup& g, const LatticeOptions& opt) {
  const int n = g.degree();
  if (g.is_trivial() || mu_value(g, opt) != static_cast<std::uint64_t>(n))
    throw input_error("orbit decomposition checks need a group of minimal degree equal to its point count");

  const auto obs = sorted_orbits(g);
  const std::size_t k = obs.size();

  L1Report rep;
  for (const auto& o : obs) rep.orbit_sizes.push_back(o.size());
  rep.clauses = {{"i", 0, 0},  {"ii", 0, 0}, {"iii", 0, 0}, {"iv", 0, 0},
                 {"v", 0, 0},  {"vi", 0, 0}, {"vii", 0, 0}};
  L1Clause& ci = rep.clauses[0];
  L1Clause& cii = rep.clauses[1];
  L1Clause& ciii = rep.clauses[2];
  L1Clause& civ = rep.clauses[3];
  L1Clause& cv = rep.clauses[4];
  L1Clause& cvi = rep.clauses[5];
  L1Clause& cvii = rep.clauses[6];

  // Elements supported inside one orbit, per orbit.
  std::vector<PermGroup> kern;
  kern.reserve(k);
  for (const auto& o : obs) kern.push_back(intersection(g, young_on(n, o)));

  // (i) the image on any proper nonempty union of orbits is again minimal
  if (k >= 2) {
    for (std::uint32_t m = 1; m + 1 < (1u << k); ++m) {
      std::vector<int> pts;
      for (std::size_t i = 0; i < k; ++i)
        if (m >> i & 1) pts.insert(pts.end(), obs[i].begin(), obs[i].end());
      std::sort(pts.begin(), pts.end());
      ++ci.applicable;
      if (mu_value(restriction(g, pts), opt) != pts.size()) ++ci.failed;
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    const auto& o = obs[i];
    const std::size_t sz = o.size();
    const auto hist = element_order_histogram(kern[i]);

    // (ii) some nontrivial element lives entirely inside the orbit
    ++cii.applicable;
    if (kern[i].is_trivial()) ++cii.failed;

    // (iii) a 2 point orbit splits off: the transposition on it is in g,
    // its complement kernel has half the order and is minimal on the rest
    if (sz == 2) {
      ++ciii.applicable;
      bool ok = g.contains(transposition_on(n, o[0], o[1]));
      if (ok) {
        std::vector<int> rest;
        for (int x = 0; x < n; ++x)
          if (x != o[0] && x != o[1]) rest.push_back(x);
        const PermGroup fix = intersection(g, young_on(n, rest));
        ok = 2 * fix.order_u64() == g.order_u64() &&
             mu_value(fix, opt) == static_cast<std::uint64_t>(n - 2);
      }
      if (!ok) ++ciii.failed;
    }

    // (iv) a 3 point orbit forces a 3 cycle inside it
    if (sz == 3) {
      ++civ.applicable;
      if (hist.count(3) == 0) ++civ.failed;
    }

    if (sz == 4) {
      // (v) a 3 cycle inside a 4 point orbit forces the full Alt there
      if (hist.count(3) > 0) {
        ++cv.applicable;
        if (!kern[i].contains_group(alternating_on(n, o))) ++cv.failed;
      }
      // (vi) a transposition inside a 4 point orbit brings its complement
      bool any = false;
      bool bad = false;
      for (const Perm& x : kern[i].elements()) {
        const auto sup = x.support();
        if (sup.size() != 2) continue;
        any = true;
        std::vector<int> other;
        for (int p : o)
          if (p != sup[0] && p != sup[1]) other.push_back(p);
        if (!kern[i].contains(transposition_on(n, other[0], other[1]))) bad = true;
      }
      if (any) {
        ++cvi.applicable;
        if (bad) ++cvi.failed;
      }
    }

    // (vii) an orbit of prime size exceeding every other orbit carries a
    // full cycle
    if (is_small_prime(sz)) {
      bool largest = true;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i && obs[j].size() >= sz) largest = false;
      if (largest) {
        ++cvii.applicable;
        if (hist.count(sz) == 0) ++cvii.failed;
      }
    }
  }

  return rep;
}

CentralizerReport check_centralizer_theorems(int degree, const LatticeOptions& opt) {
  const auto lat = subgroup_classes(PermGroup::symmetric(degree), opt);

  CentralizerReport r;
  r.degree = degree;
  r.lattice_complete = lat.complete;
  const auto target = static_cast<std::uint64_t>(degree);

  struct Slot {
    bool checked = false;
    std::vector<std::string> notes;
  };
  std::vector<Slot> slots(lat.classes.size());

  parallel_for(lat.classes.size(), opt.jobs, [&](std::size_t idx) {
    const auto& rec = lat.classes[idx];
    const PermGroup& g = rec.representative;
    if (mu_value(g, opt) != target) return;
    Slot& s = slots[idx];
    s.checked = true;
    auto note = [&](const std::string& what) {
      s.notes.push_back("class " + std::to_string(rec.class_id) + " (" +
                        canonical_spec(g) + "): " + what);
    };

    const PermGroup c = centralizer_in_sym(g);
    if (!is_abelian(c)) note("centralizer is not abelian");

    if (!c.is_trivial() && in_wright_class(g, opt).has_value()) {
      // Prime order centralizing elements must already lie in the group.
      for (const Perm& x : c.elements())
        if (is_small_prime(x.order()) && !g.contains(x)) {
          note("prime order centralizing element outside the group");
          break;
        }
      // An elementary abelian centralizer is swallowed whole.
      const auto hist = element_order_histogram(c);
      bool elementary = hist.size() == 2;
      if (elementary) {
        const auto p = hist.rbegin()->first;
        elementary = is_small_prime(p);
      }
      if (elementary && !g.contains_group(c))
        note("elementary abelian centralizer not inside the group");
    }

    if (degree == 9 && !c.is_trivial() && is_transitive(g) && !g.contains_group(c))
      note("transitive class does not absorb its centralizer");
  });

  for (const auto& s : slots) {
    if (!s.checked) continue;
    ++r.classes_checked;
    for (const auto& nmsg : s.notes) r.failure_notes.push_back(nmsg);
  }
  r.failures = r.failure_notes.size();
  return r;
}

bool check_diagonal_lemma() {
  const PermGroup w = wreath_product(PermGroup::cyclic(3), PermGroup::symmetric(3));
  if (w.degree() != 9 || w.order_u64() != 162) return false;

  const Perm x1 = Perm::parse_cycles("(1 2 3)", 9);
  const Perm x2 = Perm::parse_cycles("(4 5 6)", 9);
  const Perm x3 = Perm::parse_cycles("(7 8 9)", 9);
  const PermGroup base = PermGroup::from_generators(9, {x1, x2, x3});
  if (base.order_u64() != 27 || !w.contains_group(base)) return false;

  const PermGroup diag =
      PermGroup::from_generators(9, {compose(compose(x1, x2), x3)});
  const PermGroup zero = PermGroup::from_generators(
      9, {compose(x1, x2.inverse()), compose(x2, x3.inverse())});
  if (diag.order_u64() != 3 || zero.order_u64() != 9) return false;
  if (!zero.contains_group(diag)) return false;

  // The order 9 candidate is exactly the sum-zero subgroup: membership of a
  // base element is decided by its block exponents adding to 0 mod 3.
  for (const Perm& b : base.elements()) {
    int sum = 0;
    for (int blk = 0; blk < 3; ++blk) sum += b[3 * blk] - 3 * blk;
    if (zero.contains(b) != (sum % 3 == 0)) return false;
  }

  std::vector<PermGroup> hits;
  for (const PermGroup& nsub : normal_subgroups(w)) {
    if (nsub.is_trivial() || nsub.order_u64() >= 27) continue;
    if (!base.contains_group(nsub)) continue;
    hits.push_back(nsub);
  }
  if (hits.size() != 2) return false;
  return (hits[0].same_group(diag) && hits[1].same_group(zero)) ||
         (hits[0].same_group(zero) && hits[1].same_group(diag));
}

bool check_subdirect_uniqueness() {
  const PermGroup p =
      external_direct_product(PermGroup::symmetric(3), PermGroup::cyclic(4));
  if (p.degree() != 7 || p.order_u64() != 24) return false;
  const std::vector<int> left_pts = {0, 1, 2};
  const std::vector<int> right_pts = {3, 4, 5, 6};
  const PermGroup h7 = named_group("H7");

  const auto lat = subgroup_classes(p);
  if (!lat.complete) return false;

  std::uint64_t subdirect = 0;   // proper subgroups surjecting onto both factors
  bool subdirect_h7 = true;      // and each is a copy of the order 12 target
  bool subdirect_order4 = true;  // carrying an element of order 4
  std::uint64_t order12_order4_onto_sym = 0;
  for (const auto& rec : lat.classes) {
    const PermGroup& s = rec.representative;
    if (s.order_u64() >= p.order_u64()) continue;
    const bool onto_sym = restriction(s, left_pts).order_u64() == 6;
    if (onto_sym && restriction(s, right_pts).order_u64() == 4) {
      subdirect += rec.class_size;
      subdirect_h7 = subdirect_h7 && is_isomorphic(s, h7) == IsoVerdict::yes;
      subdirect_order4 = subdirect_order4 && element_order_histogram(s).count(4) > 0;
    }
    if (s.order_u64() == 12 && onto_sym && element_order_histogram(s).count(4) > 0)
      order12_order4_onto_sym += rec.class_size;
  }
  return subdirect == 1 && subdirect_h7 && subdirect_order4 &&
         order12_order4_onto_sym == 1;
}

bool g225_base_member(const Perm& p) {
  if (p.degree() != 10)
    throw input_error("base membership test expects a permutation of 10 points");
  int swapped = 0;
  for (int i = 0; i < 5; ++i) {
    if (p[i] == i && p[i + 5] == i + 5) continue;
    if (p[i] == i + 5 && p[i + 5] == i) {
      ++swapped;
      continue;
    }
    throw input_error("not an element of the block swap base");
  }
  return swapped % 2 == 0;
}

SaundersReport saunders_witness(const LatticeOptions& opt) {
  SaundersReport r;
  const PermGroup g = named_group("G225");
  r.group_cert = mu(subgroup_classes(g, opt));
  r.mu_group = r.group_cert.mu;

  const PermGroup c = centralizer_in_sym(g);
  r.centralizer_order = c.order_u64();
  r.centralizer_meets_trivially = intersection(g, c).is_trivial();

  std::vector<Perm> gens = g.generators();
  for (const Perm& x : c.generators()) gens.push_back(x);
  const PermGroup whole = PermGroup::from_generators(10, std::move(gens));
  r.internal_product_is_whole =
      whole.order_u64() == g.order_u64() * c.order_u64() &&
      whole.order_u64() == 160;

  // All 32 block swap vectors against the parity membership rule.
  r.base_parity_ok = true;
  for (int m = 0; m < 32; ++m) {
    std::vector<int> im(10);
    std::iota(im.begin(), im.end(), 0);
    for (int i = 0; i < 5; ++i)
      if (m >> i & 1) std::swap(im[i], im[i + 5]);
    const Perm b = Perm::from_images(std::move(im));
    if (g225_base_member(b) != g.contains(b)) r.base_parity_ok = false;
  }

  const PermGroup prod = external_direct_product(g, PermGroup::cyclic(2));
  r.product_cert = mu(subgroup_classes(prod, opt));
  r.mu_product = r.product_cert.mu;
  return r;
}

bool SaundersReport::pass() const {
  return mu_group == 10 && centralizer_order == 2 && centralizer_meets_trivially &&
         internal_product_is_whole && base_parity_ok && mu_product == 10;
}

MuTable generate_table(int max_degree, const LatticeOptions& opt) {
  if (max_degree < 1 || max_degree > 9)
    throw input_error("table degree must lie in 1..9");

  MuTable t;
  t.max_degree = max_degree;

  struct Entry {
    PermGroup rep;
    std::size_t row;
  };
  std::vector<Entry> entries;

  for (int n = 1; n <= max_degree; ++n) {
    const auto lat = subgroup_classes(PermGroup::symmetric(n), opt);
    t.complete = t.complete && lat.complete;
    for (const auto& rec : lat.classes) {
      const PermGroup& g = rec.representative;
      const std::uint64_t order = g.order_u64();
      bool merged = false;
      std::vector<std::size_t> undecided;
      for (const auto& e : entries) {
        if (t.rows[e.row].order != order) continue;
        const IsoVerdict v = is_isomorphic(g, e.rep);
        if (v == IsoVerdict::yes) {
          merged = true;
          break;
        }
        if (v == IsoVerdict::unresolved) undecided.push_back(e.row);
      }
      if (merged) continue;
      TableRow row;
      row.label = canonical_spec(g);
      row.order = order;
      row.mu = mu_value(g, opt);
      row.wright = in_wright_class(g, opt).has_value();
      for (std::size_t other : undecided)
        t.unresolved.push_back(t.rows[other].label + " vs " + row.label);
      entries.push_back({g, t.rows.size()});
      t.rows.push_back(std::move(row));
    }
  }

  std::sort(t.rows.begin(), t.rows.end(), [](const TableRow& a, const TableRow& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.mu != b.mu) return a.mu < b.mu;
    return a.label < b.label;
  });
  return t;
}

std::string table_to_csv(const MuTable& t) {
  std::string out = "label,order,mu,wright\n";
  for (const auto& r : t.rows) {
    out += '"';
    for (char ch : r.label) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += "\",";
    out += std::to_string(r.order);
    out += ',';
    out += std::to_string(r.mu);
    out += ',';
    out += r.wright ? '1' : '0';
    out += '\n';
  }
  return out;
}

StanzaFile table_to_stanzas(const MuTable& t) {
  StanzaFile f;
  Stanza& head = f.append("mu-table");
  head.add("engine", kEngineVersion);
  head.add_int("max-degree", t.max_degree);
  head.add_int("row-count", static_cast<long long>(t.rows.size()));
  head.add("complete", t.complete ? "1" : "0");
  for (const auto& u : t.unresolved) head.add("unresolved", u);
  for (const auto& r : t.rows) {
    Stanza& st = f.append("table-row");
    st.add("group", r.label);
    st.add_int("order", static_cast<long long>(r.order));
    st.add_int("mu", static_cast<long long>(r.mu));
    st.add("wright", r.wright ? "1" : "0");
  }
  return f;
}

StanzaFile report_to_stanzas(const VerificationReport& r) {
  StanzaFile f;
  Stanza& head = f.append("verification-report");
  head.add("engine", kEngineVersion);
  head.add("group", sym_spec(r.degree));
  head.add_int("degree", r.degree);
  head.add_int("classes-total", static_cast<long long>(r.classes_total));
  head.add_int("classes-minimally-embedded",
               static_cast<long long>(r.classes_minimally_embedded));
  head.add_int("decompositions-checked",
               static_cast<long long>(r.decompositions_checked));
  head.add_int("violation-count", static_cast<long long>(r.violations.size()));
  head.add_int("exceptional-count",
               static_cast<long long>(r.exceptional_classes.size()));
  for (int id : r.exceptional_classes) head.add_int("exceptional-class", id);
  head.add("lattice-complete", r.lattice_complete ? "1" : "0");
  head.add("completeness-assumed", r.completeness_assumed ? "1" : "0");
  head.add("lattice-checksum", hex16(r.lattice_checksum));
  head.add("coverage",
           "every isomorphism type of this minimal degree occurs among the swept classes");

  for (const auto& v : r.violations) {
    Stanza& vs = f.append("violation");
    vs.add_int("class-id", v.class_id);
    vs.add("group", v.group_spec);
    vs.add("left", v.left_spec);
    vs.add("right", v.right_spec);
    vs.add_int("mu-group", static_cast<long long>(v.mu_group));
    vs.add_int("mu-left", static_cast<long long>(v.mu_left));
    vs.add_int("mu-right", static_cast<long long>(v.mu_right));
    f.stanzas.push_back(
        certificate_to_stanza(group_from_spec(v.group_spec), v.group_cert));
    f.stanzas.push_back(
        certificate_to_stanza(group_from_spec(v.left_spec), v.left_cert));
    f.stanzas.push_back(
        certificate_to_stanza(group_from_spec(v.right_spec), v.right_cert));
  }
  return f;
}

std::string render_report(const VerificationReport& r) {
  std::ostringstream os;
  os << "product additivity sweep on " << r.degree << " points\n";
  os << "classes: " << r.classes_total << " total, " << r.classes_minimally_embedded
     << " minimally embedded\n";
  os << "decompositions checked: " << r.decompositions_checked << "\n";
  os << "violations: " << r.violations.size() << "\n";
  for (const auto& v : r.violations)
    os << "  class " << v.class_id << " " << v.group_spec << ": mu " << v.mu_group
       << " but factors give " << v.mu_left << " + " << v.mu_right << "\n";
  os << "exceptional classes: ";
  if (r.exceptional_classes.empty()) {
    os << "none\n";
  } else {
    for (std::size_t i = 0; i < r.exceptional_classes.size(); ++i)
      os << (i ? ", " : "") << r.exceptional_classes[i];
    os << "\n";
  }
  os << "lattice: " << (r.lattice_complete ? "complete" : "INCOMPLETE, budget hit");
  if (r.completeness_assumed) os << " (completeness assumed past the order limit)";
  os << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "elapsed: %.2f s\n", r.seconds);
  os << buf;
  return os.str();
}

StanzaFile saunders_to_stanzas(const SaundersReport& r) {
  const PermGroup g = named_group("G225");
  const PermGroup prod = external_direct_product(g, PermGroup::cyclic(2));

  StanzaFile f;
  Stanza& st = f.append("saunders-witness");
  st.add("engine", kEngineVersion);
  st.add("group", canonical_spec(g));
  st.add("product", canonical_spec(prod));
  st.add_int("mu-group", static_cast<long long>(r.mu_group));
  st.add_int("centralizer-order", static_cast<long long>(r.centralizer_order));
  st.add("centralizer-meets-trivially", r.centralizer_meets_trivially ? "1" : "0");
  st.add("internal-product-whole", r.internal_product_is_whole ? "1" : "0");
  st.add("base-parity", r.base_parity_ok ? "1" : "0");
  st.add_int("mu-product", static_cast<long long>(r.mu_product));
  st.add("pass", r.pass() ? "1" : "0");
  f.stanzas.push_back(certificate_to_stanza(g, r.group_cert));
  f.stanzas.push_back(certificate_to_stanza(prod, r.product_cert));
  return f;
}

namespace {

bool fail_check(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return false;
}

// The three stanzas after `at` must be certificates matching the spec and
// mu fields named here.
bool certs_follow(const StanzaFile& f, std::size_t at, const Stanza& owner,
                  const std::vector<std::pair<std::string, std::string>>& keys,
                  std::string* why) {
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const std::size_t j = at + 1 + k;
    if (j >= f.stanzas.size() || f.stanzas[j].name != "mu-certificate")
      return fail_check(why, "[" + owner.name + "] is missing its certificates");
    const Stanza& cert = f.stanzas[j];
    if (cert.get("group") != owner.get(keys[k].first))
      return fail_check(why, "certificate group does not match " + keys[k].first +
                                 " of [" + owner.name + "]");
    if (cert.get_int("mu") != owner.get_int(keys[k].second))
      return fail_check(why, "certificate mu does not match " + keys[k].second +
                                 " of [" + owner.name + "]");
  }
  return true;
}

}  // namespace

bool check_stanza_file(const StanzaFile& f, std::string* why) {
  if (f.stanzas.empty()) return fail_check(why, "no stanzas");

  std::size_t violation_stanzas = 0;
  for (const auto& st : f.stanzas)
    if (st.name == "violation") ++violation_stanzas;

  for (std::size_t i = 0; i < f.stanzas.size(); ++i) {
    const Stanza& st = f.stanzas[i];
    try {
      if (st.name == "mu-certificate") {
        auto [g, cert] = certificate_from_stanza(st);
        std::string reason;
        if (!verify_certificate(g, cert, &reason))
          return fail_check(why, "certificate for " + st.get("group") +
                                     " does not verify: " + reason);
      } else if (st.name == "violation") {
        if (st.get_int("mu-left") + st.get_int("mu-right") == st.get_int("mu-group"))
          return fail_check(why, "violation stanza records no violation");
        if (!certs_follow(f, i, st,
                          {{"group", "mu-group"}, {"left", "mu-left"}, {"right", "mu-right"}},
                          why))
          return false;
      } else if (st.name == "verification-report") {
        if (st.get_int("degree") < 1)
          return fail_check(why, "report degree is not positive");
        if (st.get_int("violation-count") !=
            static_cast<long long>(violation_stanzas))
          return fail_check(why, "violation count disagrees with the violation stanzas");
        if (st.get_int("exceptional-count") !=
            static_cast<long long>(st.all("exceptional-class").size()))
          return fail_check(why, "exceptional count disagrees with the listed classes");
        if (st.get_int("classes-minimally-embedded") > st.get_int("classes-total"))
          return fail_check(why, "more minimal classes than classes");
        st.get("lattice-checksum");
        st.get("coverage");
      } else if (st.name == "saunders-witness") {
        if (st.get("pass") != "1")
          return fail_check(why, "witness stanza does not pass");
        if (st.get_int("mu-product") >= st.get_int("mu-group") + 2)
          return fail_check(why, "witness product degree is not below the sum");
        if (!certs_follow(f, i, st, {{"group", "mu-group"}, {"product", "mu-product"}},
                          why))
          return false;
      } else if (st.name == "mu-table") {
        std::size_t rows = 0;
        for (const auto& other : f.stanzas)
          if (other.name == "table-row") ++rows;
        if (st.get_int("row-count") != static_cast<long long>(rows))
          return fail_check(why, "row count disagrees with the table rows");
      } else if (st.name == "table-row") {
        st.get("group");
        if (st.get_int("order") < 1 || st.get_int("mu") < 0)
          return fail_check(why, "table row with impossible numbers");
        const std::string& w = st.get("wright");
        if (w != "0" && w != "1")
          return fail_check(why, "table row wright flag is not 0 or 1");
      } else {
        return fail_check(why, "unknown stanza [" + st.name + "]");
      }
    } catch (const input_error& e) {
      return fail_check(why, "stanza " + std::to_string(i) + " [" + st.name +
                                 "]: " + e.what());
    }
  }
  return true;
}

}  // namespace mindeg
