#include "mindeg/backtrack.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "mindeg/actions.hpp"
#include "mindeg/errors.hpp"

namespace mindeg {

namespace {

// Orbit of x under a generator list, as a membership mask.
std::vector<char> point_orbit_mask(const std::vector<Perm>& gens, int degree,
                                   int x) {
  std::vector<char> in(degree, 0);
  std::vector<int> q{x};
  in[x] = 1;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (const Perm& g : gens) {
      const int y = g[q[i]];
      if (!in[y]) {
        in[y] = 1;
        q.push_back(y);
      }
    }
  return in;
}

std::optional<Perm> chain_element_search(
    const StabChain& ch, std::size_t level,
    const std::vector<std::pair<int, int>>& constraints) {
  if (level == ch.levels.size()) {
    for (const auto& [x, y] : constraints)
      if (x != y) return std::nullopt;
    return Perm(ch.degree);
  }
  const ChainLevel& lv = ch.levels[level];

  // Every requested image must be reachable at this level at all.
  for (const auto& [x, y] : constraints) {
    if (x == y) continue;
    if (!point_orbit_mask(lv.gens, ch.degree, x)[y]) return std::nullopt;
  }

  std::vector<int> candidates;
  bool forced = false;
  for (const auto& [x, y] : constraints)
    if (x == lv.base) {
      if (!lv.in_orbit[y]) return std::nullopt;
      candidates.assign(1, y);
      forced = true;
      break;
    }
  if (!forced) {
    candidates = lv.orbit;
    std::sort(candidates.begin(), candidates.end());
  }

  for (int p : candidates) {
    const Perm& t = lv.trans_by_point[p];
    const Perm t_inv = t.inverse();
    std::vector<std::pair<int, int>> rest;
    rest.reserve(constraints.size());
    for (const auto& [x, y] : constraints) {
      if (x == lv.base) continue;  // consumed by the choice of p
      rest.emplace_back(x, t_inv[y]);
    }
    if (auto h = chain_element_search(ch, level + 1, rest))
      return compose(*h, t);
  }
  return std::nullopt;
}

std::optional<std::vector<std::pair<int, int>>> normalize_pairs(
    int degree, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::pair<int, int>> out;
  std::vector<int> img(degree, -1), pre(degree, -1);
  for (const auto& [x, y] : pairs) {
    if (x < 0 || x >= degree || y < 0 || y >= degree) return std::nullopt;
    if (img[x] != -1) {
      if (img[x] != y) return std::nullopt;
      continue;
    }
    if (pre[y] != -1) return std::nullopt;
    img[x] = y;
    pre[y] = x;
    out.emplace_back(x, y);
  }
  return out;
}

BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<int> group_support(const PermGroup& g) {
  std::vector<int> out;
  for (int x = 0; x < g.degree(); ++x)
    for (const Perm& h : g.generators())
      if (h[x] != x) {
        out.push_back(x);
        break;
      }
  return out;
}

// Natural symmetric group on a point subset, embedded at full degree.
void append_sym_generators(int degree, const std::vector<int>& pts,
                           std::vector<Perm>& gens) {
  if (pts.size() < 2) return;
  std::vector<int> im(degree);
  std::iota(im.begin(), im.end(), 0);
  im[pts[0]] = pts[1];
  im[pts[1]] = pts[0];
  gens.push_back(Perm::from_images(im));
  if (pts.size() > 2) {
    std::iota(im.begin(), im.end(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i)
      im[pts[i]] = pts[(i + 1) % pts.size()];
    gens.push_back(Perm::from_images(im));
  }
}

// Point-image search for elements g of the symmetric group with h^g inside
// (and, by order equality, equal to) the target group. Works on the support
// of h; the caller completes the map off the support.
struct PairSearch {
  int degree;
  std::vector<Perm> hgens;
  const PermGroup* target = nullptr;
  std::vector<int> pts;         // assignment order, support of h
  std::vector<int> h_orb_size;  // per point, 0 off support of h
  std::vector<int> t_orb_size;  // per point, 0 off support of the target
  std::vector<int> m;
  std::vector<char> used;
  bool collect_all = false;
  std::vector<Perm> found;
  std::uint64_t nodes = 0;
  std::uint64_t node_budget = 20'000'000;

  bool partial_consistent() const {
    for (const Perm& h : hgens) {
      std::vector<std::pair<int, int>> pairs;
      for (int u : pts) {
        if (m[u] < 0) continue;
        const int v = h[u];
        if (m[v] < 0) continue;
        pairs.emplace_back(m[u], m[v]);
      }
      if (!has_element_with_images(*target, pairs)) return false;
    }
    return true;
  }

  // Completes the partial map into a full permutation: unassigned points of
  // h's fixed set go to the target's fixed set in ascending order.
  Perm complete() const {
    std::vector<int> im(degree, -1);
    std::vector<char> taken(degree, 0);
    for (int x = 0; x < degree; ++x)
      if (m[x] >= 0) {
        im[x] = m[x];
        taken[m[x]] = 1;
      }
    int next = 0;
    for (int x = 0; x < degree; ++x) {
      if (im[x] >= 0) continue;
      while (taken[next]) ++next;
      im[x] = next;
      taken[next] = 1;
    }
    return Perm::from_images(im);
  }

  bool leaf_valid(const Perm& g) const {
    for (const Perm& h : hgens)
      if (!target->contains(h.conjugated_by(g))) return false;
    return true;
  }

  // Returns true to stop the whole search (first-match mode).
  bool run(std::size_t i) {
    if (++nodes > node_budget)
      throw budget_error("conjugation search node budget exceeded");
    if (i == pts.size()) {
      const Perm g = complete();
      if (leaf_valid(g)) {
        found.push_back(g);
        if (!collect_all) return true;
      }
      return false;
    }
    const int x = pts[i];
    for (int y = 0; y < degree; ++y) {
      if (used[y] || t_orb_size[y] != h_orb_size[x]) continue;
      m[x] = y;
      used[y] = 1;
      if (partial_consistent() && run(i + 1)) return true;
      m[x] = -1;
      used[y] = 0;
    }
    return false;
  }
};

std::vector<int> orbit_sizes_per_point(const PermGroup& g) {
  std::vector<int> sz(g.degree(), 0);
  for (const auto& orb : orbits(g))
    if (orb.size() > 1)
      for (int x : orb) sz[x] = static_cast<int>(orb.size());
  return sz;
}

// Support points ordered so that constraints bind early: orbits by
// descending size, within an orbit in discovery order from its least point.
std::vector<int> assignment_order(const PermGroup& g) {
  auto os = orbits(g);
  std::stable_sort(os.begin(), os.end(), [](const auto& a, const auto& b) {
    return a.size() > b.size();
  });
  std::vector<int> pts;
  for (const auto& orb : os) {
    if (orb.size() < 2) continue;
    std::vector<char> seen(g.degree(), 0);
    std::vector<int> q{orb[0]};
    seen[orb[0]] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (const Perm& h : g.generators()) {
        const int y = h[q[i]];
        if (!seen[y]) {
          seen[y] = 1;
          q.push_back(y);
        }
      }
    pts.insert(pts.end(), q.begin(), q.end());
  }
  return pts;
}

PairSearch make_pair_search(const PermGroup& h, const PermGroup& target,
                            bool collect_all) {
  PairSearch s;
  s.degree = h.degree();
  s.hgens = h.generators();
  s.target = &target;
  s.pts = assignment_order(h);
  s.h_orb_size = orbit_sizes_per_point(h);
  s.t_orb_size = orbit_sizes_per_point(target);
  s.m.assign(s.degree, -1);
  s.used.assign(s.degree, 0);
  s.collect_all = collect_all;
  return s;
}

std::multiset<std::size_t> orbit_size_multiset(const PermGroup& g) {
  std::multiset<std::size_t> out;
  for (const auto& orb : orbits(g)) out.insert(orb.size());
  return out;
}

// Restriction to the support is the full symmetric or alternating group
// there; both have the symmetric group on the support as normalizer factor.
bool support_is_sym_or_alt(const PermGroup& h, const std::vector<int>& supp) {
  const auto s = static_cast<int>(supp.size());
  if (s < 2) return false;
  for (const auto& orb : orbits(h))
    if (orb.size() > 1 && static_cast<int>(orb.size()) != s) return false;
  if (!std::any_of(orbits(h).begin(), orbits(h).end(), [&](const auto& o) {
        return static_cast<int>(o.size()) == s;
      }))
    return false;
  const BigInt full = factorial_big(s);
  // An index-2 subgroup of the symmetric group is the alternating group.
  return h.order() == full || (s >= 3 && h.order() * 2 == full);
}

}  // namespace

std::optional<Perm> element_with_images(
    const PermGroup& g, const std::vector<std::pair<int, int>>& pairs) {
  auto norm = normalize_pairs(g.degree(), pairs);
  if (!norm) return std::nullopt;
  return chain_element_search(g.chain(), 0, *norm);
}

bool has_element_with_images(const PermGroup& g,
                             const std::vector<std::pair<int, int>>& pairs) {
  return element_with_images(g, pairs).has_value();
}

PermGroup centralizer_in_sym_search(const PermGroup& g) {
  const int n = g.degree();
  const auto& gens = g.generators();
  const auto os = orbits(g);

  // Propagates r -> y through the orbit graph; a commuting permutation must
  // satisfy c(s(x)) = s(c(x)), so one image determines the whole orbit.
  auto propagate = [&](int r, int y) -> std::optional<std::vector<int>> {
    std::vector<int> img(n, -1);
    std::vector<char> taken(n, 0);
    img[r] = y;
    taken[y] = 1;
    std::vector<int> q{r};
    for (std::size_t i = 0; i < q.size(); ++i) {
      const int x = q[i];
      for (const Perm& s : gens) {
        const int x2 = s[x];
        const int y2 = s[img[x]];
        if (img[x2] == -1) {
          if (taken[y2]) return std::nullopt;
          img[x2] = y2;
          taken[y2] = 1;
          q.push_back(x2);
        } else if (img[x2] != y2) {
          return std::nullopt;
        }
      }
    }
    return img;
  };

  std::vector<Perm> cgens;
  std::vector<std::size_t> class_rep(os.size());
  for (std::size_t i = 0; i < os.size(); ++i) {
    const int r_i = os[i][0];
    std::optional<std::vector<int>> cross;
    std::size_t rep = i;
    for (std::size_t j = 0; j < i && !cross; ++j) {
      if (class_rep[j] != j || os[j].size() != os[i].size()) continue;
      for (int y : os[i])
        if ((cross = propagate(os[j][0], y))) {
          rep = j;
          break;
        }
    }
    class_rep[i] = rep;
    if (rep != i) {
      // Swap of two isomorphic orbits along the matching the propagation
      // found; inverse on the way back, identity elsewhere.
      std::vector<int> im(n);
      std::iota(im.begin(), im.end(), 0);
      for (int x : os[rep]) {
        im[x] = (*cross)[x];
        im[(*cross)[x]] = x;
      }
      cgens.push_back(Perm::from_images(im));
      continue;
    }
    for (int y : os[i]) {
      if (y == r_i) continue;
      if (auto img = propagate(r_i, y)) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        for (int x : os[i]) im[x] = (*img)[x];
        cgens.push_back(Perm::from_images(im));
      }
    }
  }
  return PermGroup::from_generators(n, std::move(cgens));
}

PermGroup normalizer_in_sym(const PermGroup& h) {
  const int n = h.degree();
  if (h.is_trivial()) return PermGroup::symmetric(n);

  const auto supp = group_support(h);
  std::vector<int> fixed;
  {
    std::vector<char> in_supp(n, 0);
    for (int x : supp) in_supp[x] = 1;
    for (int x = 0; x < n; ++x)
      if (!in_supp[x]) fixed.push_back(x);
  }

  std::vector<Perm> ngens = h.generators();
  if (support_is_sym_or_alt(h, supp)) {
    append_sym_generators(n, supp, ngens);
  } else {
    auto search = make_pair_search(h, h, /*collect_all=*/true);
    search.run(0);
    ngens.insert(ngens.end(), search.found.begin(), search.found.end());
  }
  append_sym_generators(n, fixed, ngens);
  return PermGroup::from_generators(n, std::move(ngens));
}

std::optional<Perm> conjugating_element_sym(const PermGroup& h,
                                            const PermGroup& k) {
  if (h.degree() != k.degree())
    throw input_error("conjugacy search requires equal degrees");
  if (h.order() != k.order()) return std::nullopt;
  if (orbit_size_multiset(h) != orbit_size_multiset(k)) return std::nullopt;
  if (h.is_trivial()) return Perm(h.degree());

  auto search = make_pair_search(h, k, /*collect_all=*/false);
  search.run(0);
  if (search.found.empty()) return std::nullopt;
  return search.found.front();
}

std::optional<Perm> conjugating_element_in(const PermGroup& ambient,
                                           const PermGroup& h,
                                           const PermGroup& k) {
  const int n = ambient.degree();
  if (h.degree() != n || k.degree() != n)
    throw input_error("conjugacy search requires equal degrees");
  if (h.order() != k.order()) return std::nullopt;
  if (orbit_size_multiset(h) != orbit_size_multiset(k)) return std::nullopt;

  if (ambient.order() == factorial_big(n))
    return conjugating_element_sym(h, k);

  constexpr std::uint64_t kFilterBudget = 200'000;
  if (ambient.order() <= kFilterBudget) {
    for (const Perm& a : ambient.elements(kFilterBudget)) {
      bool ok = true;
      for (const Perm& g : h.generators())
        if (!k.contains(g.conjugated_by(a))) {
          ok = false;
          break;
        }
      if (ok) return a;
    }
    return std::nullopt;
  }

  if (n >= 3 && ambient.order() * 2 == factorial_big(n)) {
    // Alternating ambient: correct the parity of a symmetric-group
    // transporter by an odd normalizing element, if one exists.
    auto t = conjugating_element_sym(h, k);
    if (!t) return std::nullopt;
    if (t->is_even()) return t;
    for (const Perm& g : normalizer_in_sym(h).generators())
      if (!g.is_even()) return compose(g, *t);
    return std::nullopt;
  }

  throw budget_error("ambient group too large for conjugacy search");
}

}  // namespace mindeg
