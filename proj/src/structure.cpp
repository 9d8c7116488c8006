#include "mindeg/structure.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "mindeg/actions.hpp"
#include "mindeg/backtrack.hpp"
#include "mindeg/errors.hpp"

namespace mindeg {

namespace {

BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool normalizes(const Perm& x, const PermGroup& h) {
  for (const Perm& g : h.generators())
    if (!h.contains(g.conjugated_by(x))) return false;
  return true;
}

PermGroup with_extra_generator(const PermGroup& g, const Perm& x) {
  std::vector<Perm> gens = g.generators();
  gens.push_back(x);
  return PermGroup::from_generators(g.degree(), std::move(gens));
}

// Orbit transversal from a: words[p] sends a to p.
std::vector<Perm> orbit_words(const std::vector<Perm>& gens, int degree,
                              int a) {
  std::vector<Perm> words(degree);
  std::vector<char> have(degree, 0);
  words[a] = Perm(degree);
  have[a] = 1;
  std::vector<int> q{a};
  for (std::size_t i = 0; i < q.size(); ++i)
    for (const Perm& s : gens) {
      const int y = s[q[i]];
      if (!have[y]) {
        have[y] = 1;
        words[y] = compose(words[q[i]], s);
        q.push_back(y);
      }
    }
  return words;
}

// Second route to the centralizer, valid glue when orbit sizes are pairwise
// distinct: for each orbit, the normalizer of a point stabilizer acts on the
// orbit through right cosets, p = a^{u_p} -> a^{x^{-1} u_p}, and the images
// of its generators centralize the group there.
PermGroup centralizer_by_orbit_quotients(const PermGroup& g) {
  const int n = g.degree();
  std::vector<Perm> cgens;
  for (const auto& orb : orbits(g)) {
    if (orb.size() == 1) continue;
    const int a = orb[0];
    const auto words = orbit_words(g.generators(), n, a);
    const PermGroup norm = normalizer(g, g.point_stabilizer(a));
    for (const Perm& x : norm.generators()) {
      const Perm xinv = x.inverse();
      std::vector<int> im(n);
      std::iota(im.begin(), im.end(), 0);
      for (int p : orb) im[p] = words[p][xinv[a]];
      cgens.push_back(Perm::from_images(std::move(im)));
    }
  }
  return PermGroup::from_generators(n, std::move(cgens));
}

// Index-2 subgroup of even elements, by Schreier generators over the
// transversal {identity, o} for an odd generator o.
PermGroup even_part(const PermGroup& g) {
  std::vector<Perm> evens, odds;
  for (const Perm& s : g.generators())
    (s.is_even() ? evens : odds).push_back(s);
  if (odds.empty()) return g;
  const Perm& o = odds[0];
  const Perm oinv = o.inverse();
  std::vector<Perm> kgens = evens;
  for (const Perm& e : evens) kgens.push_back(compose(compose(o, e), oinv));
  for (const Perm& s : odds) {
    kgens.push_back(compose(s, oinv));
    kgens.push_back(compose(o, s));
  }
  return PermGroup::from_generators(g.degree(), std::move(kgens));
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int maxpart) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

Perm perm_of_cycle_type(int degree, const std::vector<int>& parts) {
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  int at = 0;
  for (int p : parts) {
    for (int i = 0; i < p; ++i) im[at + i] = at + (i + 1) % p;
    at += p;
  }
  return Perm::from_images(std::move(im));
}

bool partition_is_even(const std::vector<int>& parts) {
  int t = 0;
  for (int p : parts) t += p - 1;
  return t % 2 == 0;
}

// n! over the centralizer order prod k^{m_k} m_k!.
BigInt partition_class_size(int n, const std::vector<int>& parts) {
  std::map<int, int> mult;
  for (int p : parts) ++mult[p];
  BigInt size = factorial_big(n);
  for (auto [k, m] : mult) {
    for (int i = 0; i < m; ++i) size /= k;
    size /= factorial_big(m);
  }
  return size;
}

struct ClassData {
  std::vector<Perm> elements;        // enumeration order
  std::vector<int> class_of;         // element index -> class id
  std::vector<Perm> reps;            // class id -> least member
  std::vector<std::uint64_t> sizes;  // class id -> size
};

ClassData conjugacy_classes(const PermGroup& g) {
  ClassData cd;
  cd.elements = g.elements(kEnumBudget);
  std::unordered_map<Perm, int, PermHash> index;
  index.reserve(cd.elements.size() * 2);
  for (std::size_t i = 0; i < cd.elements.size(); ++i)
    index.emplace(cd.elements[i], static_cast<int>(i));
  cd.class_of.assign(cd.elements.size(), -1);
  for (std::size_t i = 0; i < cd.elements.size(); ++i) {
    if (cd.class_of[i] != -1) continue;
    const int cid = static_cast<int>(cd.reps.size());
    std::vector<int> q{static_cast<int>(i)};
    cd.class_of[i] = cid;
    Perm least = cd.elements[i];
    std::uint64_t size = 0;
    for (std::size_t qi = 0; qi < q.size(); ++qi) {
      ++size;
      const Perm& e = cd.elements[q[qi]];
      if (e < least) least = e;
      for (const Perm& s : g.generators()) {
        const int j = index.at(e.conjugated_by(s));
        if (cd.class_of[j] == -1) {
          cd.class_of[j] = cid;
          q.push_back(j);
        }
      }
    }
    cd.reps.push_back(least);
    cd.sizes.push_back(size);
  }
  return cd;
}

void sort_reps(std::vector<Perm>& reps) {
  std::sort(reps.begin(), reps.end(), [](const Perm& a, const Perm& b) {
    const auto oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a < b;
  });
}

bool orbit_sizes_distinct(const PermGroup& g) {
  std::set<std::size_t> seen;
  for (const auto& orb : orbits(g))
    if (!seen.insert(orb.size()).second) return false;
  return true;
}

}  // namespace

bool is_natural_symmetric(const PermGroup& g) {
  return g.order() == factorial_big(g.degree());
}

bool is_natural_alternating(const PermGroup& g) {
  return g.degree() >= 3 && g.order() * 2 == factorial_big(g.degree());
}

PermGroup centralizer_in_sym(const PermGroup& g) {
  PermGroup c = centralizer_in_sym_search(g);
  if (orbit_sizes_distinct(g) &&
      (g.order() <= kEnumBudget || is_natural_symmetric(g) ||
       is_natural_alternating(g))) {
    if (!c.same_group(centralizer_by_orbit_quotients(g)))
      throw std::logic_error("centralizer methods disagree");
  }
  return c;
}

PermGroup normalizer(const PermGroup& g, const PermGroup& h) {
  if (g.degree() != h.degree())
    throw input_error("normalizer: degree mismatch");
  if (!g.contains_group(h))
    throw input_error("normalizer: not a subgroup of the ambient group");
  if (g.order() <= kEnumBudget) {
    PermGroup s = h;
    for (const Perm& x : g.elements(kEnumBudget)) {
      if (s.contains(x) || !normalizes(x, h)) continue;
      s = with_extra_generator(s, x);
    }
    return s;
  }
  if (is_natural_symmetric(g)) return normalizer_in_sym(h);
  if (is_natural_alternating(g)) return even_part(normalizer_in_sym(h));
  throw budget_error("normalizer: ambient group too large to filter");
}

bool is_normal(const PermGroup& g, const PermGroup& h) {
  for (const Perm& x : g.generators())
    if (!normalizes(x, h)) return false;
  return true;
}

PermGroup intersection(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree())
    throw input_error("intersection: degree mismatch");
  if (b.contains_group(a)) return a;
  if (a.contains_group(b)) return b;
  const PermGroup& small = a.order() <= b.order() ? a : b;
  const PermGroup& large = a.order() <= b.order() ? b : a;
  constexpr std::uint64_t kIntersectBudget = 250'000;
  PermGroup s = PermGroup::trivial(a.degree());
  for (const Perm& x : small.elements(kIntersectBudget)) {
    if (!large.contains(x) || s.contains(x)) continue;
    s = with_extra_generator(s, x);
  }
  return s;
}

PermGroup core(const PermGroup& g, const PermGroup& h) {
  if (!g.contains_group(h)) throw input_error("core: not a subgroup");
  const PermGroup n_gh = normalizer(g, h);
  PermGroup k = h;
  for (const Perm& t : right_transversal(g, n_gh, 400'000)) {
    if (k.is_trivial()) break;
    if (t.is_identity()) continue;
    k = intersection(k, k.conjugated_by(t));
  }

  if (g.order() <= h.order() * kMaxDegree) {
    // Index small enough to act on: the result must be exactly the kernel
    // of the coset action.
    const CosetAction ca = coset_action(g, h);
    if (k.order() * ca.image.order() != g.order())
      throw std::logic_error("core disagrees with coset-action kernel order");
    for (const Perm& x : k.generators())
      for (const Perm& t : ca.transversal)
        if (!h.contains(x.conjugated_by(t.inverse())))
          throw std::logic_error("core element leaves a conjugate");
  }
  return k;
}

Perm commutator(const Perm& a, const Perm& b) {
  return compose(compose(compose(a.inverse(), b.inverse()), a), b);
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seed) {
  PermGroup s = PermGroup::from_generators(g.degree(), seed);
  std::vector<Perm> queue = s.generators();
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const Perm& x : g.generators()) {
      Perm y = queue[i].conjugated_by(x);
      if (!s.contains(y)) {
        s = with_extra_generator(s, y);
        queue.push_back(std::move(y));
      }
    }
  return s;
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Perm> seed;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      seed.push_back(commutator(gens[i], gens[j]));
  return normal_closure(g, seed);
}

std::vector<PermGroup> derived_series(const PermGroup& g) {
  std::vector<PermGroup> out{g};
  for (;;) {
    PermGroup next = derived_subgroup(out.back());
    if (next.order() == out.back().order()) break;
    out.push_back(std::move(next));
    if (out.back().is_trivial()) break;
  }
  return out;
}

PermGroup perfect_residual(const PermGroup& g) {
  return derived_series(g).back();
}

PermGroup center(const PermGroup& g) {
  return intersection(g, centralizer_in_sym(g));
}

bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (compose(gens[i], gens[j]) != compose(gens[j], gens[i])) return false;
  return true;
}

bool is_perfect(const PermGroup& g) {
  return derived_subgroup(g).order() == g.order();
}

bool is_solvable(const PermGroup& g) {
  return derived_series(g).back().is_trivial();
}

bool is_nilpotent(const PermGroup& g) {
  for (const auto& [p, e] : order_factorization(g)) {
    (void)e;
    if (!is_normal(g, sylow_subgroup(g, p))) return false;
  }
  return true;
}

std::map<int, int> order_factorization(const PermGroup& g) {
  BigInt n = g.order();
  std::map<int, int> out;
  for (int p = 2; p <= kMaxDegree; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n != 1)
    throw std::logic_error("group order has an oversized prime factor");
  return out;
}

std::vector<Perm> element_class_reps(const PermGroup& g) {
  const int n = g.degree();
  std::vector<Perm> reps;
  if (is_natural_symmetric(g)) {
    for (const auto& parts : partitions_of(n))
      reps.push_back(perm_of_cycle_type(n, parts));
  } else if (is_natural_alternating(g)) {
    for (const auto& parts : partitions_of(n)) {
      if (!partition_is_even(parts)) continue;
      Perm rep = perm_of_cycle_type(n, parts);
      const bool splits =
          std::set<int>(parts.begin(), parts.end()).size() == parts.size() &&
          std::all_of(parts.begin(), parts.end(),
                      [](int p) { return p % 2 == 1; });
      if (splits) {
        // Half of the ambient class; any odd conjugation reaches the rest.
        std::vector<int> sw(n);
        std::iota(sw.begin(), sw.end(), 0);
        std::swap(sw[0], sw[1]);
        reps.push_back(rep.conjugated_by(Perm::from_images(std::move(sw))));
      }
      reps.push_back(std::move(rep));
    }
  } else {
    reps = conjugacy_classes(g).reps;
  }
  sort_reps(reps);
  return reps;
}

std::map<std::uint64_t, std::uint64_t> element_order_histogram(
    const PermGroup& g, std::uint64_t budget) {
  std::map<std::uint64_t, std::uint64_t> out;
  const int n = g.degree();
  if (is_natural_symmetric(g) || is_natural_alternating(g)) {
    const bool alt = is_natural_alternating(g);
    std::map<std::uint64_t, BigInt> exact;
    for (const auto& parts : partitions_of(n)) {
      if (alt && !partition_is_even(parts)) continue;
      exact[perm_of_cycle_type(n, parts).order()] +=
          partition_class_size(n, parts);
    }
    for (const auto& [ord, count] : exact) {
      if (count > std::numeric_limits<std::uint64_t>::max())
        throw budget_error("element_order_histogram: count exceeds 64 bits");
      out[ord] = count.convert_to<std::uint64_t>();
    }
    return out;
  }
  for (const Perm& x : g.elements(budget)) ++out[x.order()];
  return out;
}

std::vector<PermGroup> normal_subgroups(const PermGroup& g) {
  const int n = g.degree();
  std::vector<PermGroup> all{PermGroup::trivial(n)};
  auto add_new = [&](PermGroup cand) {
    for (const PermGroup& have : all)
      if (have.order() == cand.order() && have.contains_group(cand)) return;
    all.push_back(std::move(cand));
  };
  for (const Perm& rep : element_class_reps(g)) {
    if (rep.is_identity()) continue;
    add_new(normal_closure(g, {rep}));
  }
  // Every normal subgroup is the join of the class closures of its own
  // elements, so closing the atoms under joins reaches all of them.
  for (std::size_t i = 1; i < all.size(); ++i)
    for (std::size_t j = 1; j < i; ++j) {
      if (all.size() > 2000)
        throw budget_error("normal subgroup lattice too large");
      std::vector<Perm> gens = all[i].generators();
      const auto& more = all[j].generators();
      gens.insert(gens.end(), more.begin(), more.end());
      add_new(PermGroup::from_generators(n, std::move(gens)));
    }
  std::stable_sort(all.begin(), all.end(),
                   [](const PermGroup& a, const PermGroup& b) {
                     return a.order() < b.order();
                   });
  return all;
}

std::vector<PermGroup> minimal_normal_subgroups(const PermGroup& g) {
  const auto all = normal_subgroups(g);
  std::vector<PermGroup> out;
  for (const PermGroup& n : all) {
    if (n.is_trivial()) continue;
    bool minimal = true;
    for (const PermGroup& m : all) {
      if (m.is_trivial() || m.order() >= n.order()) continue;
      if (n.contains_group(m)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(n);
  }
  return out;
}

namespace {

PermGroup embedded_at(const PermGroup& g, int degree, int offset) {
  std::vector<Perm> gens;
  for (const Perm& s : g.generators()) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    for (int i = 0; i < g.degree(); ++i) im[offset + i] = offset + s[i];
    gens.push_back(Perm::from_images(std::move(im)));
  }
  return PermGroup::from_generators(degree, std::move(gens));
}

// Sylow p-subgroup of the natural symmetric group: one iterated-wreath
// factor of C_p per base-p digit of n, on consecutive points.
PermGroup sylow_of_natural_sym(int n, int p) {
  std::vector<Perm> gens;
  PermGroup w = PermGroup::trivial(1);
  int offset = 0;
  for (int rest = n; rest > 0; rest /= p) {
    for (int c = 0; c < rest % p; ++c) {
      const PermGroup copy = embedded_at(w, n, offset);
      for (const Perm& s : copy.generators()) gens.push_back(s);
      offset += w.degree();
    }
    if (rest >= p) w = wreath_product(w, PermGroup::cyclic(p));
  }
  return PermGroup::from_generators(n, std::move(gens));
}

}  // namespace

PermGroup sylow_subgroup(const PermGroup& g, int p) {
  if (p < 2 || p > kMaxDegree)
    throw input_error("sylow_subgroup: prime out of range");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw input_error("sylow_subgroup: p is not prime");
  const auto factors = order_factorization(g);
  const auto it = factors.find(p);
  if (it == factors.end()) return PermGroup::trivial(g.degree());
  BigInt target = 1;
  for (int i = 0; i < it->second; ++i) target *= p;

  if (is_natural_symmetric(g) || is_natural_alternating(g)) {
    PermGroup s = sylow_of_natural_sym(g.degree(), p);
    if (is_natural_alternating(g) && p == 2) s = even_part(s);
    if (s.order() != target)
      throw std::logic_error("wreath sylow construction has wrong order");
    return s;
  }
  if (g.order() > kEnumBudget)
    throw budget_error("sylow_subgroup: group too large to filter");

  // A p-element to start from, by powering a class representative.
  PermGroup s = PermGroup::trivial(g.degree());
  for (const Perm& rep : element_class_reps(g)) {
    std::uint64_t m = rep.order();
    if (m % p != 0) continue;
    std::uint64_t cofactor = m;
    while (cofactor % p == 0) cofactor /= p;
    Perm x = rep;
    for (std::uint64_t i = 1; i < cofactor; ++i) x = compose(x, rep);
    s = PermGroup::from_generators(g.degree(), {x});
    break;
  }

  // Grow inside the normalizer until the full p-part is reached; the
  // normalizer of a non-Sylow p-subgroup always holds a usable p-element.
  while (s.order() < target) {
    const PermGroup n = normalizer(g, s);
    bool extended = false;
    for (const Perm& x : n.elements(kEnumBudget)) {
      std::uint64_t m = x.order();
      if (m == 1) continue;
      bool ppower = true;
      while (m > 1) {
        if (m % p != 0) {
          ppower = false;
          break;
        }
        m /= p;
      }
      if (!ppower || s.contains(x)) continue;
      PermGroup bigger = with_extra_generator(s, x);
      BigInt b = bigger.order();
      while (b % p == 0) b /= p;
      if (b != 1) continue;
      s = std::move(bigger);
      extended = true;
      break;
    }
    if (!extended)
      throw std::logic_error("sylow extension step found no p-element");
  }
  return s;
}

namespace {

// Paired embedding of (a, b) on the disjoint union of the two point sets.
Perm paired_perm(const Perm& a, const Perm& b) {
  const int da = a.degree(), db = b.degree();
  std::vector<int> im(da + db);
  for (int i = 0; i < da; ++i) im[i] = a[i];
  for (int i = 0; i < db; ++i) im[da + i] = da + b[i];
  return Perm::from_images(std::move(im));
}

// Smallest generating tuple drawn from the class representatives, by
// ascending subset size; falls back to the defining generators.
std::vector<Perm> small_generating_tuple(const PermGroup& g,
                                         const std::vector<Perm>& reps) {
  std::vector<Perm> pool;
  for (const Perm& r : reps)
    if (!r.is_identity()) pool.push_back(r);
  const int m = static_cast<int>(pool.size());
  long long builds = 0;
  for (int k = 1; k <= std::min(m, 4); ++k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      if (++builds > 50'000) return g.generators();
      std::vector<Perm> tuple;
      for (int i : idx) tuple.push_back(pool[i]);
      if (PermGroup::from_generators(g.degree(), tuple).order() == g.order())
        return tuple;
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == m - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return g.generators();
}

struct IsoSearch {
  const PermGroup* g = nullptr;
  const PermGroup* h = nullptr;
  std::vector<Perm> tuple;           // generating tuple of g
  std::vector<BigInt> prefix_order;  // |<tuple[0..j]>|
  std::vector<std::pair<std::uint64_t, std::uint64_t>> gkey;
  std::vector<Perm> h_first;  // candidates for the first image
  std::vector<Perm> h_all;    // candidates for the rest
  std::vector<std::pair<std::uint64_t, std::uint64_t>> h_first_key;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> h_all_key;
  std::vector<Perm> chosen;
  long long budget = 200'000;
  bool exhausted_budget = false;

  // A prefix extends to an isomorphism only if the paired tuple generates a
  // diagonal subgroup: same order as the source prefix alone.
  bool feasible_prefix() const {
    std::vector<Perm> pairs;
    for (std::size_t i = 0; i < chosen.size(); ++i)
      pairs.push_back(paired_perm(tuple[i], chosen[i]));
    const PermGroup d =
        PermGroup::from_generators(g->degree() + h->degree(), pairs);
    return d.order() == prefix_order[chosen.size() - 1];
  }

  bool search(std::size_t j) {
    if (--budget < 0) {
      exhausted_budget = true;
      return false;
    }
    if (j == tuple.size())
      return PermGroup::from_generators(h->degree(), chosen).order() ==
             h->order();
    const auto& cands = j == 0 ? h_first : h_all;
    const auto& keys = j == 0 ? h_first_key : h_all_key;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (keys[i] != gkey[j]) continue;
      chosen.push_back(cands[i]);
      if (feasible_prefix() && search(j + 1)) return true;
      chosen.pop_back();
      if (exhausted_budget) return false;
    }
    return false;
  }
};

std::uint64_t class_size_of(const ClassData& cd, const Perm& x) {
  for (std::size_t i = 0; i < cd.elements.size(); ++i)
    if (cd.elements[i] == x) return cd.sizes[cd.class_of[i]];
  throw std::logic_error("element missing from its own class data");
}

}  // namespace

IsoVerdict is_isomorphic(const PermGroup& g, const PermGroup& h) {
  if (g.order() != h.order()) return IsoVerdict::no;
  if (g.is_trivial()) return IsoVerdict::yes;
  if (g.order() > kEnumBudget || h.order() > kEnumBudget) {
    // Too large to enumerate: settle what the cheap invariants can.
    if (is_abelian(g) != is_abelian(h)) return IsoVerdict::no;
    std::vector<BigInt> dg, dh;
    for (const auto& t : derived_series(g)) dg.push_back(t.order());
    for (const auto& t : derived_series(h)) dh.push_back(t.order());
    if (dg != dh) return IsoVerdict::no;
    return IsoVerdict::unresolved;
  }

  if (element_order_histogram(g) != element_order_histogram(h))
    return IsoVerdict::no;
  const ClassData cg = conjugacy_classes(g);
  const ClassData ch = conjugacy_classes(h);
  {
    std::multiset<std::uint64_t> sg(cg.sizes.begin(), cg.sizes.end());
    std::multiset<std::uint64_t> sh(ch.sizes.begin(), ch.sizes.end());
    if (sg != sh) return IsoVerdict::no;
  }
  {
    std::vector<BigInt> dg, dh;
    for (const auto& t : derived_series(g)) dg.push_back(t.order());
    for (const auto& t : derived_series(h)) dh.push_back(t.order());
    if (dg != dh) return IsoVerdict::no;
  }
  if (center(g).order() != center(h).order()) return IsoVerdict::no;
  for (const auto& [p, e] : order_factorization(g)) {
    (void)e;
    if (is_normal(g, sylow_subgroup(g, p)) !=
        is_normal(h, sylow_subgroup(h, p)))
      return IsoVerdict::no;
  }

  if (g.degree() + h.degree() > kMaxDegree) return IsoVerdict::unresolved;

  IsoSearch is;
  is.g = &g;
  is.h = &h;
  {
    std::vector<Perm> greps = cg.reps;
    sort_reps(greps);
    is.tuple = small_generating_tuple(g, greps);
  }
  {
    std::vector<Perm> acc;
    for (const Perm& t : is.tuple) {
      acc.push_back(t);
      is.prefix_order.push_back(
          PermGroup::from_generators(g.degree(), acc).order());
    }
  }
  for (const Perm& t : is.tuple)
    is.gkey.emplace_back(t.order(), class_size_of(cg, t));
  is.h_first = ch.reps;
  for (const Perm& r : is.h_first)
    is.h_first_key.emplace_back(r.order(), class_size_of(ch, r));
  is.h_all = ch.elements;
  for (std::size_t i = 0; i < ch.elements.size(); ++i)
    is.h_all_key.emplace_back(ch.elements[i].order(),
                              ch.sizes[ch.class_of[i]]);

  if (is.search(0)) return IsoVerdict::yes;
  return is.exhausted_budget ? IsoVerdict::unresolved : IsoVerdict::no;
}

std::optional<Perm> sym_conjugate(const PermGroup& g, const PermGroup& h) {
  if (g.degree() != h.degree())
    throw input_error("sym_conjugate: degree mismatch");
  if (g.order() != h.order()) return std::nullopt;
  constexpr std::uint64_t kCensusBudget = 10'000;
  if (g.order() <= kCensusBudget) {
    auto census = [](const PermGroup& k) {
      std::multiset<std::vector<int>> out;
      for (const Perm& x : k.elements(kCensusBudget)) {
        std::vector<int> type;
        for (const auto& c : x.cycles())
          type.push_back(static_cast<int>(c.size()));
        std::sort(type.begin(), type.end());
        out.insert(std::move(type));
      }
      return out;
    };
    if (census(g) != census(h)) return std::nullopt;
  }
  return conjugating_element_sym(g, h);
}

std::vector<DirectDecomposition> direct_decompositions(const PermGroup& g) {
  const auto ns = normal_subgroups(g);
  std::vector<DirectDecomposition> out;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i].is_trivial()) continue;
    for (std::size_t j = i + 1; j < ns.size(); ++j) {
      if (ns[j].is_trivial()) continue;
      if (ns[i].order() * ns[j].order() != g.order()) continue;
      if (!intersection(ns[i], ns[j]).is_trivial()) continue;
      out.push_back({ns[i], ns[j]});
    }
  }
  return out;
}

}  // namespace mindeg
