#include "mindeg/lattice.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mindeg/actions.hpp"
#include "mindeg/backtrack.hpp"
#include "mindeg/errors.hpp"
#include "mindeg/stanza.hpp"
#include "mindeg/structure.hpp"
#include "mindeg/version.hpp"

#include "text_util.hpp"

namespace mindeg {

namespace {

Perm perm_power(const Perm& p, std::uint64_t e) {
  Perm r(p.degree());
  Perm base = p;
  while (e > 0) {
    if (e & 1) r = compose(r, base);
    base = compose(base, base);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> distinct_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// A copy of a group relabeled onto its own support. points[i] is the
// original label of the compressed point i, so groups found inside the
// compressed copy can be lifted back verbatim.
struct Compressed {
  PermGroup group;
  std::vector<int> points;
};

Compressed compress_to_support(const PermGroup& g) {
  const int n = g.degree();
  std::vector<bool> moved(n, false);
  for (const Perm& p : g.generators())
    for (int i = 0; i < n; ++i)
      if (p[i] != i) moved[i] = true;
  std::vector<int> pts;
  for (int i = 0; i < n; ++i)
    if (moved[i]) pts.push_back(i);
  if (static_cast<int>(pts.size()) == n) return {g, std::move(pts)};
  std::vector<int> back(n, -1);
  for (std::size_t i = 0; i < pts.size(); ++i) back[pts[i]] = static_cast<int>(i);
  std::vector<Perm> gens;
  for (const Perm& p : g.generators()) {
    std::vector<int> im(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) im[i] = back[p[pts[i]]];
    gens.push_back(Perm::from_images(std::move(im)));
  }
  const int m = static_cast<int>(pts.size());
  return {PermGroup::from_generators(m, std::move(gens)), std::move(pts)};
}

Perm lift_perm(const Perm& small, const std::vector<int>& pts, int degree) {
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) im[pts[i]] = pts[small[static_cast<int>(i)]];
  return Perm::from_images(std::move(im));
}

PermGroup lift_group(const PermGroup& g, const std::vector<int>& pts, int degree) {
  if (g.degree() != static_cast<int>(pts.size()))
    throw std::logic_error("lift_group: point map does not match the group degree");
  if (g.degree() == degree) return g;
  std::vector<Perm> gens;
  for (const Perm& p : g.generators()) gens.push_back(lift_perm(p, pts, degree));
  return PermGroup::from_generators(degree, std::move(gens));
}

// Deterministic small generating set: keep the stored generators that
// enlarge the running subgroup, then drop any that turned out redundant.
PermGroup reduce_generators(const PermGroup& g) {
  const int n = g.degree();
  std::vector<Perm> kept;
  PermGroup cur = PermGroup::trivial(n);
  for (const Perm& x : g.generators()) {
    if (x.is_identity() || cur.contains(x)) continue;
    kept.push_back(x);
    cur = PermGroup::from_generators(n, kept);
  }
  for (std::size_t i = kept.size(); i-- > 0 && kept.size() > 1;) {
    std::vector<Perm> rest;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) rest.push_back(kept[j]);
    PermGroup r = PermGroup::from_generators(n, rest);
    if (r.order() == g.order()) {
      kept = std::move(rest);
      cur = std::move(r);
    }
  }
  return cur;
}

// Sign kernel via Schreier generators over the transversal {e, t}.
PermGroup even_subgroup(const PermGroup& g) {
  std::vector<Perm> evens, odds;
  for (const Perm& p : g.generators()) (p.is_even() ? evens : odds).push_back(p);
  if (odds.empty()) return g;
  const Perm& t = odds.front();
  const Perm tinv = t.inverse();
  std::vector<Perm> gens = evens;
  for (const Perm& s : evens) gens.push_back(compose(compose(t, s), tinv));
  for (const Perm& s : odds) {
    gens.push_back(compose(s, tinv));
    gens.push_back(compose(t, s));
  }
  PermGroup e = PermGroup::from_generators(g.degree(), std::move(gens));
  if (e.order() * 2 != g.order())
    throw std::logic_error("even part has the wrong index");
  return e;
}

// Normalizer with ambient-aware dispatch: natural ambients go through the
// backtrack search instead of the element filter.
PermGroup normalizer_in(const PermGroup& amb, const PermGroup& h) {
  if (is_natural_symmetric(amb)) return normalizer_in_sym(h);
  if (is_natural_alternating(amb)) return even_subgroup(normalizer_in_sym(h));
  return normalizer(amb, h);
}

// Largest ambient-normal subgroup inside h: intersect with conjugates under
// the ambient generators until stable. Any normal subgroup of the ambient
// contained in h survives every step, so the fixed point is exactly the core.
PermGroup core_inside(const PermGroup& amb, const PermGroup& h) {
  PermGroup k = h;
  bool again = true;
  while (again && !k.is_trivial()) {
    again = false;
    for (const Perm& x : amb.generators()) {
      const PermGroup kx = k.conjugated_by(x);
      if (k.contains_group(kx)) continue;
      k = intersection(k, kx);
      again = true;
      if (k.is_trivial()) break;
    }
  }
  return k;
}

// Cheap screens first: p-groups are nilpotent, centerless groups are not.
bool nilpotent_flag(const PermGroup& g) {
  if (g.order() == 1) return true;
  if (order_factorization(g).size() == 1) return true;
  if (center(g).is_trivial()) return false;
  return is_nilpotent(g);
}

// Conjugation-invariant bucket key: order, orbit sizes, and the element
// order histogram of the support-compressed copy when affordable. Groups in
// different buckets are never conjugate; within a bucket the transporter
// search decides.
std::string bucket_signature(const PermGroup& g) {
  std::string key = g.order().str();
  key += '|';
  std::vector<int> sizes;
  for (const auto& o : orbits(g)) sizes.push_back(static_cast<int>(o.size()));
  std::sort(sizes.begin(), sizes.end());
  for (int s : sizes) {
    key += std::to_string(s);
    key += ',';
  }
  key += '|';
  if (g.is_trivial()) return key + "1:1";
  const Compressed c = compress_to_support(g);
  const PermGroup& s = c.group;
  if (is_natural_symmetric(s) || is_natural_alternating(s) || s.order() <= 20'000) {
    for (const auto& [o, cnt] : element_order_histogram(s, kEnumBudget)) {
      key += std::to_string(o);
      key += ':';
      key += std::to_string(cnt);
      key += ';';
    }
  } else {
    key += '?';
  }
  return key;
}

PermGroup checked_perfect(PermGroup g, std::uint64_t order) {
  if (g.order() != order)
    throw std::logic_error("perfect catalog entry has order " + g.order().str() +
                           ", expected " + std::to_string(order));
  if (!is_perfect(g)) throw std::logic_error("perfect catalog entry is not perfect");
  return g;
}

// PSL(2,p) on the projective line over a prime field, generated by
// x -> x+1 and x -> -1/x. Point p plays the role of infinity.
PermGroup psl2_prime(int p, std::uint64_t order) {
  const int inf = p;
  std::vector<int> t(p + 1), w(p + 1);
  for (int x = 0; x < p; ++x) t[x] = (x + 1) % p;
  t[inf] = inf;
  w[0] = inf;
  w[inf] = 0;
  for (int x = 1; x < p; ++x) {
    int ix = 1;
    for (int k = 0; k < p - 2; ++k) ix = ix * x % p;
    w[x] = (p - ix) % p;
  }
  return checked_perfect(
      PermGroup::from_generators(
          p + 1, {Perm::from_images(std::move(t)), Perm::from_images(std::move(w))}),
      order);
}

// F8 = F2[u]/(u^3+u+1), elements as bit patterns 0..7.
int f8_mul(int a, int b) {
  int r = 0;
  for (int i = 0; i < 3; ++i)
    if (b & (1 << i)) r ^= a << i;
  for (int i = 5; i >= 3; --i)
    if (r & (1 << i)) r ^= 0b1011 << (i - 3);
  return r;
}

int f8_inv(int a) {
  int r = 1;
  for (int i = 0; i < 6; ++i) r = f8_mul(r, a);
  return r;
}

PermGroup psl2_8() {
  const int inf = 8;
  std::vector<int> t(9), s(9), w(9);
  for (int x = 0; x < 8; ++x) {
    t[x] = x ^ 1;          // x + 1
    s[x] = f8_mul(x, 2);   // x * u, a square since every element of F8* is
    w[x] = x == 0 ? inf : f8_inv(x);
  }
  t[inf] = inf;
  s[inf] = inf;
  w[inf] = 0;
  return checked_perfect(
      PermGroup::from_generators(9, {Perm::from_images(std::move(t)),
                                     Perm::from_images(std::move(s)),
                                     Perm::from_images(std::move(w))}),
      504);
}

// F9 = F3[i]/(i^2+1), element a+3b standing for a+bi.
int f9_add(int u, int v) { return (u % 3 + v % 3) % 3 + 3 * ((u / 3 + v / 3) % 3); }

int f9_mul(int u, int v) {
  const int a = u % 3, b = u / 3, c = v % 3, d = v / 3;
  const int re = ((a * c - b * d) % 3 + 3) % 3;
  const int im = (a * d + b * c) % 3;
  return re + 3 * im;
}

int f9_neg(int u) { return (3 - u % 3) % 3 + 3 * ((3 - u / 3) % 3); }

int f9_inv(int u) {
  int r = 1;
  for (int i = 0; i < 7; ++i) r = f9_mul(r, u);
  return r;
}

PermGroup psl2_9() {
  const int inf = 9;
  std::vector<int> t1(10), ti(10), mi(10), w(10);
  for (int x = 0; x < 9; ++x) {
    t1[x] = f9_add(x, 1);
    ti[x] = f9_add(x, 3);
    mi[x] = f9_mul(x, 3);  // x * i; i generates the square class group
    w[x] = x == 0 ? inf : f9_neg(f9_inv(x));
  }
  t1[inf] = inf;
  ti[inf] = inf;
  mi[inf] = inf;
  w[inf] = 0;
  return checked_perfect(
      PermGroup::from_generators(10, {Perm::from_images(std::move(t1)),
                                      Perm::from_images(std::move(ti)),
                                      Perm::from_images(std::move(mi)),
                                      Perm::from_images(std::move(w))}),
      360);
}

// Nonzero vectors of F2^3 labeled by their bit patterns 1..7 (point v-1).
// Generated by the coordinate shift and a transvection; transitive, so the
// order is a multiple of 42, and the only such subgroup order is the full
// group of the module automorphisms.
int f23_shift(int v) { return ((v & 3) << 1) | ((v >> 2) & 1); }
int f23_transvect(int v) { return v ^ ((v & 2) >> 1); }

PermGroup gl32_on7() {
  std::vector<int> s(7), t(7);
  for (int v = 1; v <= 7; ++v) {
    s[v - 1] = f23_shift(v) - 1;
    t[v - 1] = f23_transvect(v) - 1;
  }
  return checked_perfect(
      PermGroup::from_generators(
          7, {Perm::from_images(std::move(s)), Perm::from_images(std::move(t))}),
      168);
}

// The same linear maps on all eight vectors, plus a translation.
PermGroup agl32_on8() {
  std::vector<int> s(8), t(8), tr(8);
  for (int v = 0; v < 8; ++v) {
    s[v] = f23_shift(v);
    t[v] = f23_transvect(v);
    tr[v] = v ^ 1;
  }
  return checked_perfect(
      PermGroup::from_generators(8, {Perm::from_images(std::move(s)),
                                     Perm::from_images(std::move(t)),
                                     Perm::from_images(std::move(tr))}),
      1344);
}

PermGroup alt5_on_pairs() {
  const PermGroup a5 = PermGroup::alternating(5);
  std::vector<std::array<int, 2>> pairs;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pairs.push_back({i, j});
  auto index_of = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (pairs[k][0] == i && pairs[k][1] == j) return static_cast<int>(k);
    throw std::logic_error("pair index out of range");
  };
  std::vector<Perm> gens;
  for (const Perm& a : a5.generators()) {
    std::vector<int> im(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k)
      im[k] = index_of(a[pairs[k][0]], a[pairs[k][1]]);
    gens.push_back(Perm::from_images(std::move(im)));
  }
  return checked_perfect(PermGroup::from_generators(10, std::move(gens)), 60);
}

PermGroup make_from_cycles(int degree, const std::vector<const char*>& cycles) {
  std::vector<Perm> gens;
  for (const char* c : cycles) gens.push_back(Perm::parse_cycles(c, degree));
  return PermGroup::from_generators(degree, std::move(gens));
}

// 2^4 : Alt(5) on two blocks of five, the even-weight part of the natural
// permutation module under the diagonal Alt(5).
PermGroup two4_alt5() {
  return checked_perfect(
      make_from_cycles(10, {"(1 2 3 4 5)(6 7 8 9 10)", "(1 6)(2 7)", "(1 2 3)(6 7 8)"}),
      960);
}

PermGroup diagonal_alt5() {
  return checked_perfect(
      make_from_cycles(10, {"(1 2 3)(6 7 8)", "(1 2 3 4 5)(6 7 8 9 10)"}), 60);
}

PermGroup embed_in(const PermGroup& g, int degree) {
  if (g.degree() == degree) return g;
  if (g.degree() > degree) throw std::logic_error("embed_in: degree shrinks");
  std::vector<Perm> gens;
  for (const Perm& p : g.generators()) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    for (int i = 0; i < g.degree(); ++i) im[i] = p[i];
    gens.push_back(Perm::from_images(std::move(im)));
  }
  return PermGroup::from_generators(degree, std::move(gens));
}

// Classes of nontrivial perfect subgroups supported on exactly d points,
// one representative per Sym(d) class.
const std::vector<PermGroup>& perfect_new_at(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<PermGroup>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(d);
  if (it != memo.end()) return it->second;
  std::vector<PermGroup> out;
  switch (d) {
    case 5:
      out.push_back(checked_perfect(PermGroup::alternating(5), 60));
      break;
    case 6:
      out.push_back(psl2_prime(5, 60));
      out.push_back(checked_perfect(PermGroup::alternating(6), 360));
      break;
    case 7:
      out.push_back(gl32_on7());
      out.push_back(checked_perfect(PermGroup::alternating(7), 2520));
      break;
    case 8:
      out.push_back(psl2_prime(7, 168));
      out.push_back(agl32_on8());
      out.push_back(checked_perfect(PermGroup::alternating(8), 20160));
      break;
    case 9:
      out.push_back(psl2_8());
      out.push_back(checked_perfect(PermGroup::alternating(9), 181440));
      break;
    case 10:
      out.push_back(alt5_on_pairs());
      out.push_back(psl2_9());
      out.push_back(two4_alt5());
      out.push_back(diagonal_alt5());
      out.push_back(checked_perfect(
          external_direct_product(PermGroup::alternating(5), PermGroup::alternating(5)),
          3600));
      out.push_back(checked_perfect(PermGroup::alternating(10), 1814400));
      break;
    default:
      break;
  }
  for (const PermGroup& g : out) g.order();
  return memo.emplace(d, std::move(out)).first->second;
}

std::multiset<int> orbit_sizes_of(const PermGroup& g) {
  std::multiset<int> out;
  for (const auto& o : orbits(g)) out.insert(static_cast<int>(o.size()));
  return out;
}

// All classes of nontrivial perfect subgroups of Sym(n): the degree-d lists
// padded with fixed points, deduplicated for safety.
std::vector<PermGroup> catalog_for(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<PermGroup>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::vector<PermGroup> out;
  for (int d = 5; d <= n && d <= 10; ++d)
    for (const PermGroup& g : perfect_new_at(d)) out.push_back(embed_in(g, n));
  const PermGroup sym = PermGroup::symmetric(n);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = out.size(); j-- > i + 1;) {
      if (out[i].order() != out[j].order()) continue;
      if (orbit_sizes_of(out[i]) != orbit_sizes_of(out[j])) continue;
      if (conjugating_element_in(sym, out[i], out[j]).has_value())
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
    }
  for (const PermGroup& g : out) g.order();
  return memo.emplace(n, std::move(out)).first->second;
}

// Minimal deterministic generators from a sorted element list.
PermGroup group_from_elements(int degree, const std::vector<Perm>& elems) {
  std::vector<Perm> gens;
  PermGroup cur = PermGroup::trivial(degree);
  for (const Perm& e : elems) {
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = PermGroup::from_generators(degree, gens);
  }
  return cur;
}

// Shared canonical order: by subgroup order, then orbit shape, then the
// generator text of the representative. Ids and parent links are rewritten
// to match.
void canonicalize_classes(std::vector<ClassRecord>& classes) {
  const std::size_t n = classes.size();
  std::vector<std::string> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string k;
    for (int s : orbit_sizes_of(classes[i].representative)) {
      k += std::to_string(s);
      k += ',';
    }
    k += '|';
    k += canonical_spec(classes[i].representative);
    key[i] = std::move(k);
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (classes[a].order != classes[b].order) return classes[a].order < classes[b].order;
    return key[a] < key[b];
  });
  std::vector<int> new_id(n);
  for (std::size_t pos = 0; pos < n; ++pos) new_id[idx[pos]] = static_cast<int>(pos);
  std::vector<ClassRecord> sorted;
  sorted.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    ClassRecord r = std::move(classes[idx[pos]]);
    r.class_id = static_cast<int>(pos);
    if (r.parent_class >= 0) r.parent_class = new_id[r.parent_class];
    sorted.push_back(std::move(r));
  }
  classes = std::move(sorted);
}

struct SeedPlan {
  std::vector<PermGroup> groups;
  bool assumed = false;
};

Perm first_transposition(int degree) {
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  std::swap(im[0], im[1]);
  return Perm::from_images(std::move(im));
}

// Seeds for the extension walk: the trivial subgroup plus one candidate per
// class of perfect subgroups. Perfect groups have no prime-index normal
// subgroup, so they cannot be reached by extensions and must be planted.
SeedPlan make_seeds(const PermGroup& amb) {
  SeedPlan plan;
  const int m = amb.degree();
  plan.groups.push_back(PermGroup::trivial(m));
  if (amb.order() < 60) return plan;  // no nontrivial perfect group is smaller
  auto add_catalog = [&](int deg, bool both_parities, auto&& relabel) {
    if (deg > 10)
      throw budget_error("perfect subgroup catalog stops at degree 10");
    // Alternating ambients may split one Sym class in two; plant a conjugate
    // by an odd permutation as well and let deduplication fuse the pair when
    // the class does not split.
    const Perm t = first_transposition(deg);
    for (const PermGroup& p : catalog_for(deg)) {
      plan.groups.push_back(relabel(p));
      if (both_parities) plan.groups.push_back(relabel(p.conjugated_by(t)));
    }
    if (deg >= 7) plan.assumed = true;
  };
  if (is_natural_symmetric(amb)) {
    add_catalog(m, false, [](const PermGroup& p) { return p; });
    return plan;
  }
  if (is_natural_alternating(amb)) {
    add_catalog(m, true, [](const PermGroup& p) { return p; });
    return plan;
  }
  // Every perfect subgroup lies in the perfect residual, which is where the
  // search for seeds can be confined.
  const PermGroup res = perfect_residual(amb);
  if (res.is_trivial()) return plan;
  if (res.order() <= 2000) {
    for (const auto& c : brute_force_subgroups(res).classes)
      if (c.order > 1 && c.is_perfect) plan.groups.push_back(c.representative);
    return plan;
  }
  const Compressed rc = compress_to_support(res);
  if (is_natural_alternating(rc.group)) {
    add_catalog(rc.group.degree(), true,
                [&](const PermGroup& p) { return lift_group(p, rc.points, m); });
    return plan;
  }
  throw budget_error("no seed strategy for the perfect part of this ambient");
}

struct ExtensionResult {
  std::vector<PermGroup> candidates;
  BigInt normalizer_order;
};

// All prime-index extensions of h up to ambient conjugacy. A candidate is
// <h, g> for g in the normalizer with g^p in h for a prime p; such a g adds
// exactly p cosets. Both conditions are invariant under normalizer
// conjugation, so class representatives of the normalizer suffice: any
// other extension is an ambient conjugate of one built here.
ExtensionResult extend_class(const PermGroup& amb, const PermGroup& h) {
  ExtensionResult out;
  const PermGroup norm = normalizer_in(amb, h);
  out.normalizer_order = norm.order();
  if (norm.order() == h.order()) return out;
  const int m = amb.degree();
  const Compressed nc = compress_to_support(norm);
  for (const Perm& small : element_class_reps(nc.group)) {
    const Perm r = lift_perm(small, nc.points, m);
    if (r.is_identity() || h.contains(r)) continue;
    for (std::uint64_t p : distinct_primes(r.order())) {
      if (!h.contains(perm_power(r, p))) continue;
      std::vector<Perm> gens = h.generators();
      gens.push_back(r);
      PermGroup k = PermGroup::from_generators(m, std::move(gens));
      if (k.order() != h.order() * p)
        throw std::logic_error("prime extension has unexpected order");
      out.candidates.push_back(std::move(k));
      break;  // a second prime would put the element itself in h
    }
  }
  return out;
}

std::vector<ExtensionResult> run_extensions(const PermGroup& amb,
                                            const std::vector<const PermGroup*>& hs,
                                            int jobs) {
  std::vector<ExtensionResult> out(hs.size());
  const int workers = std::min<int>(jobs, static_cast<int>(hs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < hs.size(); ++i) out[i] = extend_class(amb, *hs[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= hs.size()) return;
      try {
        out[i] = extend_class(amb, *hs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

SubgroupLattice build_cyclic_lattice(const PermGroup& ambient, const LatticeOptions& opt) {
  SubgroupLattice lat;
  lat.ambient = ambient;
  lat.method = LatticeMethod::cyclic_extension;
  if (ambient.is_trivial()) {
    ClassRecord r;
    r.representative = ambient;
    r.order = 1;
    r.core_in_ambient = ambient;
    r.is_normal = true;
    r.is_nilpotent = true;
    r.is_perfect = true;  // matches the derived-subgroup convention
    r.class_size = 1;
    r.class_id = 0;
    lat.classes.push_back(std::move(r));
    lat.complete = true;
    return lat;
  }

  const int full_degree = ambient.degree();
  const Compressed ca = compress_to_support(ambient);
  const PermGroup& amb = ca.group;
  amb.order();  // build the chain before any sharing across threads

  const SeedPlan plan = make_seeds(amb);
  lat.completeness_assumed = plan.assumed;

  struct Node {
    PermGroup g;
    int parent;
    BigInt normalizer_order;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::vector<int>> buckets;
  bool hit_budget = false;

  auto try_add = [&](const PermGroup& k, int parent) {
    auto& bucket = buckets[bucket_signature(k)];
    for (int idx : bucket)
      if (conjugating_element_in(amb, nodes[idx].g, k).has_value()) return;
    if (nodes.size() >= opt.max_classes) {
      hit_budget = true;
      return;
    }
    k.order();
    nodes.push_back({k, parent, BigInt(0)});
    bucket.push_back(static_cast<int>(nodes.size()) - 1);
  };

  for (const PermGroup& s : plan.groups) {
    try_add(s, -1);
    if (hit_budget) break;
  }

  std::size_t scanned = 0;
  while (scanned < nodes.size() && !hit_budget) {
    std::vector<int> frontier;
    for (std::size_t i = scanned; i < nodes.size(); ++i)
      frontier.push_back(static_cast<int>(i));
    scanned = nodes.size();
    std::vector<const PermGroup*> hs;
    hs.reserve(frontier.size());
    for (int id : frontier) hs.push_back(&nodes[id].g);
    const auto results = run_extensions(amb, hs, std::max(1, opt.jobs));
    for (std::size_t i = 0; i < frontier.size(); ++i)
      nodes[frontier[i]].normalizer_order = results[i].normalizer_order;
    // Sequential merge in a fixed order keeps the lattice independent of
    // the number of worker threads.
    for (std::size_t i = 0; i < frontier.size() && !hit_budget; ++i)
      for (const PermGroup& k : results[i].candidates) {
        try_add(k, frontier[i]);
        if (hit_budget) break;
      }
  }

  lat.complete = !hit_budget;
  const BigInt amb_order = amb.order();
  lat.classes.reserve(nodes.size());
  for (const Node& nd : nodes) {
    ClassRecord r;
    r.order = nd.g.order();
    BigInt norm = nd.normalizer_order;
    if (norm == 0) norm = normalizer_in(amb, nd.g).order();
    r.class_size = static_cast<std::uint64_t>(amb_order / norm);
    r.is_normal = r.class_size == 1;
    const PermGroup core_c = r.is_normal ? nd.g : core_inside(amb, nd.g);
    r.representative = lift_group(reduce_generators(nd.g), ca.points, full_degree);
    r.core_in_ambient = lift_group(reduce_generators(core_c), ca.points, full_degree);
    r.is_perfect = is_perfect(nd.g);
    r.is_nilpotent = nilpotent_flag(nd.g);
    r.parent_class = nd.parent;
    lat.classes.push_back(std::move(r));
  }
  canonicalize_classes(lat.classes);
  return lat;
}

std::string flags_to_text(bool b) { return b ? "yes" : "no"; }

bool flag_from_text(const std::string& v, const char* what) {
  if (v == "yes") return true;
  if (v == "no") return false;
  throw input_error(std::string("lattice text: bad ") + what + " flag '" + v + "'");
}

BigInt bigint_from_text(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw input_error("lattice text: bad integer '" + s + "'");
  return BigInt(s);
}

std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

}  // namespace

const ClassRecord& SubgroupLattice::class_by_id(int id) const {
  if (id < 0 || id >= static_cast<int>(classes.size()))
    throw input_error("class id " + std::to_string(id) + " out of range");
  const ClassRecord& r = classes[id];
  if (r.class_id != id) throw std::logic_error("class ids out of sync");
  return r;
}

std::string canonical_spec(const PermGroup& g) {
  std::string out = "deg " + std::to_string(g.degree()) + ":";
  bool first = true;
  for (const Perm& p : g.generators()) {
    if (p.is_identity()) continue;
    out += first ? " " : ", ";
    out += p.cycle_string();
    first = false;
  }
  return out;
}

SubgroupLattice brute_force_subgroups(const PermGroup& g, std::uint64_t order_limit) {
  if (g.order() > order_limit)
    throw budget_error("brute_force_subgroups: order " + g.order().str() +
                       " above the limit " + std::to_string(order_limit));
  const int n = g.degree();
  const std::vector<Perm> all = g.elements(order_limit);

  using Elems = std::vector<Perm>;
  std::map<Elems, int> id_of;
  std::vector<Elems> members;
  std::vector<std::vector<Perm>> gens_of;
  std::map<std::size_t, std::vector<int>> by_order;

  auto add = [&](Elems e, std::vector<Perm> gens) {
    auto it = id_of.find(e);
    if (it != id_of.end()) return std::pair<int, bool>{it->second, false};
    const int id = static_cast<int>(members.size());
    by_order[e.size()].push_back(id);
    id_of.emplace(e, id);
    members.push_back(std::move(e));
    gens_of.push_back(std::move(gens));
    return std::pair<int, bool>{id, true};
  };

  add({Perm(n)}, {});

  // Atoms: the distinct cyclic subgroups. Every subgroup is a join of atoms,
  // so closing the set under (subgroup, atom) joins reaches all of them.
  std::vector<Perm> atom_gen;
  for (const Perm& x : all) {
    if (x.is_identity()) continue;
    Elems cyc{Perm(n)};
    Perm p = x;
    while (!p.is_identity()) {
      cyc.push_back(p);
      p = compose(p, x);
    }
    std::sort(cyc.begin(), cyc.end());
    if (add(std::move(cyc), {x}).second) atom_gen.push_back(x);
  }

  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const Perm& x : atom_gen) {
      if (std::binary_search(members[i].begin(), members[i].end(), x)) continue;
      std::vector<Perm> jg = gens_of[i];
      jg.push_back(x);
      const PermGroup join = PermGroup::from_generators(n, jg);
      const std::size_t jo = static_cast<std::size_t>(join.order_u64());
      bool known = false;
      for (int cand : by_order[jo]) {
        bool inside = true;
        for (const Perm& cg : gens_of[cand])
          if (!join.contains(cg)) {
            inside = false;
            break;
          }
        if (inside) {
          known = true;  // equal order and contains a generating set
          break;
        }
      }
      if (known) continue;
      Elems je = join.elements(order_limit);
      std::sort(je.begin(), je.end());
      add(std::move(je), std::move(jg));
    }
  }

  // Fold into conjugacy classes. Closure under joins commutes with
  // conjugation, so every conjugate is already in the table.
  std::vector<int> uf(members.size());
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int a) {
    while (uf[a] != a) {
      uf[a] = uf[uf[a]];
      a = uf[a];
    }
    return a;
  };
  for (std::size_t i = 0; i < members.size(); ++i)
    for (const Perm& t : g.generators()) {
      Elems im;
      im.reserve(members[i].size());
      for (const Perm& e : members[i]) im.push_back(e.conjugated_by(t));
      std::sort(im.begin(), im.end());
      const auto it = id_of.find(im);
      if (it == id_of.end())
        throw std::logic_error("closure missed a conjugate subgroup");
      const int a = find(static_cast<int>(i)), b = find(it->second);
      if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }

  std::map<int, std::vector<int>> cls;
  for (std::size_t i = 0; i < members.size(); ++i)
    cls[find(static_cast<int>(i))].push_back(static_cast<int>(i));

  SubgroupLattice lat;
  lat.ambient = g;
  lat.method = LatticeMethod::brute_force;
  lat.complete = true;
  for (const auto& [root, ids] : cls) {
    int best = ids.front();
    for (int id : ids)
      if (members[id] < members[best]) best = id;
    Elems core = members[ids.front()];
    for (std::size_t k = 1; k < ids.size(); ++k) {
      Elems merged;
      std::set_intersection(core.begin(), core.end(), members[ids[k]].begin(),
                            members[ids[k]].end(), std::back_inserter(merged));
      core = std::move(merged);
    }
    ClassRecord r;
    r.representative = group_from_elements(n, members[best]);
    r.order = static_cast<std::uint64_t>(members[best].size());
    r.class_size = ids.size();
    r.is_normal = ids.size() == 1;
    r.core_in_ambient = group_from_elements(n, core);
    r.is_perfect = is_perfect(r.representative);
    r.is_nilpotent = nilpotent_flag(r.representative);
    lat.classes.push_back(std::move(r));
  }
  canonicalize_classes(lat.classes);
  return lat;
}

std::vector<PermGroup> perfect_seed_catalog(int degree) {
  if (degree < 1 || degree > 10)
    throw input_error("perfect_seed_catalog: degree " + std::to_string(degree) +
                      " out of range 1..10");
  return catalog_for(degree);
}

SubgroupLattice subgroup_classes(const PermGroup& ambient, const LatticeOptions& opt) {
  const std::string spec = canonical_spec(ambient);
  if (!opt.cache_dir.empty()) {
    auto cached = load_lattice_cache(ambient, opt.cache_dir, spec);
    if (cached.has_value()) return std::move(*cached);
  }
  SubgroupLattice lat = build_cyclic_lattice(ambient, opt);
  if (!opt.cache_dir.empty() && lat.complete) {
    try {
      save_lattice_cache(lat, opt.cache_dir, spec);
    } catch (const std::exception&) {
      // The cache is an optimization; failing to write one is not an error.
    }
  }
  return lat;
}

std::vector<const ClassRecord*> normal_subgroup_classes(const SubgroupLattice& lat) {
  std::vector<const ClassRecord*> out;
  for (const ClassRecord& c : lat.classes)
    if (c.is_normal) out.push_back(&c);
  return out;
}

std::string lattice_to_text(const SubgroupLattice& lat, const std::string& ambient_spec) {
  StanzaFile f;
  Stanza& head = f.append("lattice");
  head.add("engine", kEngineVersion);
  head.add("ambient", ambient_spec);
  head.add_int("degree", lat.ambient.degree());
  head.add("order", lat.ambient.order().str());
  head.add("method", lat.method == LatticeMethod::brute_force ? "brute-force"
                                                              : "cyclic-extension");
  head.add("complete",
           lat.complete ? (lat.completeness_assumed ? "assumed" : "yes") : "no");
  head.add_int("classes", static_cast<long long>(lat.classes.size()));
  for (const ClassRecord& c : lat.classes) {
    Stanza& st = f.append("class");
    st.add_int("id", c.class_id);
    st.add("order", c.order.str());
    st.add_int("size", static_cast<long long>(c.class_size));
    st.add("generators", gens_to_text(c.representative));
    st.add("core", gens_to_text(c.core_in_ambient));
    st.add("normal", flags_to_text(c.is_normal));
    st.add("nilpotent", flags_to_text(c.is_nilpotent));
    st.add("perfect", flags_to_text(c.is_perfect));
    st.add_int("parent", c.parent_class);
  }
  return f.to_text();
}

SubgroupLattice lattice_from_text(const std::string& text, const PermGroup& ambient,
                                  const std::string& ambient_spec) {
  const StanzaFile f = StanzaFile::from_text(text);
  const Stanza* head = f.find("lattice");
  if (!head) throw input_error("lattice text: missing [lattice] section");
  if (head->get("engine") != kEngineVersion)
    throw input_error("lattice text: engine version mismatch");
  if (head->get("ambient") != ambient_spec)
    throw input_error("lattice text: ambient spec mismatch");
  if (head->get_int("degree") != ambient.degree())
    throw input_error("lattice text: ambient degree mismatch");
  if (bigint_from_text(head->get("order")) != ambient.order())
    throw input_error("lattice text: ambient order mismatch");

  SubgroupLattice lat;
  lat.ambient = ambient;
  const std::string method = head->get("method");
  if (method == "brute-force")
    lat.method = LatticeMethod::brute_force;
  else if (method == "cyclic-extension")
    lat.method = LatticeMethod::cyclic_extension;
  else
    throw input_error("lattice text: unknown method '" + method + "'");
  const std::string complete = head->get("complete");
  if (complete == "yes") {
    lat.complete = true;
  } else if (complete == "assumed") {
    lat.complete = true;
    lat.completeness_assumed = true;
  } else if (complete == "no") {
    lat.complete = false;
  } else {
    throw input_error("lattice text: unknown completeness '" + complete + "'");
  }

  const auto stanzas = f.all("class");
  if (static_cast<long long>(stanzas.size()) != head->get_int("classes"))
    throw input_error("lattice text: class count mismatch");

  const int degree = ambient.degree();
  const BigInt amb_order = ambient.order();
  for (std::size_t i = 0; i < stanzas.size(); ++i) {
    const Stanza& st = *stanzas[i];
    if (st.get_int("id") != static_cast<long long>(i))
      throw input_error("lattice text: class ids out of order");
    ClassRecord r;
    r.class_id = static_cast<int>(i);
    r.representative = gens_from_text(st.get("generators"), degree);
    r.order = bigint_from_text(st.get("order"));
    // Revalidate instead of trusting: the stored facts must still be facts
    // about the group the generators define.
    if (r.representative.order() != r.order)
      throw input_error("lattice text: stored order disagrees with the generators");
    if (!ambient.contains_group(r.representative))
      throw input_error("lattice text: class leaves the ambient group");
    const long long size = st.get_int("size");
    if (size < 1 || amb_order % BigInt(size) != 0)
      throw input_error("lattice text: bad class size");
    r.class_size = static_cast<std::uint64_t>(size);
    r.is_normal = flag_from_text(st.get("normal"), "normal");
    if (r.is_normal != is_normal(ambient, r.representative))
      throw input_error("lattice text: normality flag disagrees with the generators");
    if ((r.class_size == 1) != r.is_normal)
      throw input_error("lattice text: class size disagrees with normality");
    r.core_in_ambient = gens_from_text(st.get("core"), degree);
    if (!r.representative.contains_group(r.core_in_ambient) ||
        !is_normal(ambient, r.core_in_ambient))
      throw input_error("lattice text: stored core is not an ambient-normal part");
    r.is_nilpotent = flag_from_text(st.get("nilpotent"), "nilpotent");
    r.is_perfect = flag_from_text(st.get("perfect"), "perfect");
    if (r.order <= 10'000) {
      if (r.is_nilpotent != nilpotent_flag(r.representative) ||
          r.is_perfect != is_perfect(r.representative))
        throw input_error("lattice text: stored flags disagree with the generators");
    }
    const long long parent = st.get_int("parent");
    if (parent < -1 || parent >= static_cast<long long>(i))
      throw input_error("lattice text: bad parent id");
    r.parent_class = static_cast<int>(parent);
    if (!lat.classes.empty() && lat.classes.back().order > r.order)
      throw input_error("lattice text: classes out of canonical order");
    lat.classes.push_back(std::move(r));
  }
  return lat;
}

std::string lattice_cache_path(const std::string& dir, const std::string& ambient_spec) {
  const std::string key = ambient_spec + '\0' + std::string(kEngineVersion);
  return dir + "/lattice-" + hex16(fnv1a64(key)) + ".stz";
}

void save_lattice_cache(const SubgroupLattice& lat, const std::string& dir,
                        const std::string& ambient_spec) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string path = lattice_cache_path(dir, ambient_spec);
  // Unique tmp per writer so concurrent saves of one spec cannot interleave;
  // rename keeps the visible file whole either way.
  const auto tag = std::hash<std::thread::id>{}(std::this_thread::get_id());
  const std::string tmp = path + ".tmp" + std::to_string(tag);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write cache file " + tmp);
    out << lattice_to_text(lat, ambient_spec);
  }
  fs::rename(tmp, path);
}

std::optional<SubgroupLattice> load_lattice_cache(const PermGroup& ambient,
                                                  const std::string& dir,
                                                  const std::string& ambient_spec) {
  const std::string path = lattice_cache_path(dir, ambient_spec);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return lattice_from_text(buf.str(), ambient, ambient_spec);
  } catch (const std::exception&) {
    return std::nullopt;  // stale or damaged caches are rebuilt, not repaired
  }
}

}  // namespace mindeg
