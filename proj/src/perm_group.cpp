#include "mindeg/perm_group.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "mindeg/errors.hpp"

namespace mindeg {

namespace {

int min_moved_point(const Perm& g) {
  for (int x = 0; x < g.degree(); ++x)
    if (g[x] != x) return x;
  return -1;
}

// Orbit of level.base under level.gens with coset representatives,
// deterministic BFS (FIFO queue, generators in listed order).
void compute_orbit(ChainLevel& level, int degree) {
  level.orbit.clear();
  level.trans_by_point.assign(degree, Perm());
  level.in_orbit.assign(degree, 0);
  level.orbit.push_back(level.base);
  level.in_orbit[level.base] = 1;
  level.trans_by_point[level.base] = Perm(degree);
  for (std::size_t qi = 0; qi < level.orbit.size(); ++qi) {
    const int p = level.orbit[qi];
    for (const Perm& g : level.gens) {
      const int q = g[p];
      if (!level.in_orbit[q]) {
        level.in_orbit[q] = 1;
        level.orbit.push_back(q);
        level.trans_by_point[q] = compose(level.trans_by_point[p], g);
      }
    }
  }
}

}  // namespace

std::pair<Perm, std::size_t> StabChain::sift(const Perm& g) const {
  Perm h = g;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const ChainLevel& lv = levels[i];
    const int p = h[lv.base];
    if (!lv.in_orbit[p]) return {h, i};
    h = compose(h, lv.trans_by_point[p].inverse());
  }
  return {h, levels.size()};
}

struct PermGroup::Impl {
  int degree = 0;
  std::vector<Perm> gens;
  mutable std::once_flag chain_once;
  mutable std::unique_ptr<StabChain> chain;

  const StabChain& get_chain() const {
    std::call_once(chain_once, [this] { chain = build_chain(); });
    return *chain;
  }

  std::unique_ptr<StabChain> build_chain(std::vector<int> forced_base = {}) const;
};

// Deterministic Schreier-Sims. Strong generators accumulate; whenever a
// Schreier generator fails to sift to the identity, its residue is added
// and the chain is rebuilt from scratch. Quadratic in the number of
// additions, which is irrelevant at degree <= 32, and makes the base and
// transversals reproducible: base points are always the smallest moved
// points available.
std::unique_ptr<StabChain> PermGroup::Impl::build_chain(std::vector<int> forced_base) const {
  auto chain = std::make_unique<StabChain>();
  chain->degree = degree;

  std::vector<Perm> strong;
  std::set<Perm> strong_set;
  for (const Perm& g : gens) {
    if (!g.is_identity() && strong_set.insert(g).second) strong.push_back(g);
  }

  for (int pass = 0;; ++pass) {
    if (pass > 200000) throw std::logic_error("stabilizer chain failed to close");

    // Base selection: each base point is the smallest point moved by the
    // generators that fix all previous base points.
    std::vector<int> base = forced_base;
    for (;;) {
      int next = -1;
      for (const Perm& g : strong) {
        bool fixes_base = true;
        for (int b : base)
          if (g[b] != b) {
            fixes_base = false;
            break;
          }
        if (!fixes_base) continue;
        const int m = min_moved_point(g);
        if (next < 0 || m < next) next = m;
      }
      if (next < 0) break;
      base.push_back(next);
    }

    chain->levels.clear();
    chain->levels.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      ChainLevel& lv = chain->levels[i];
      lv.base = base[i];
      lv.gens.clear();
      for (const Perm& g : strong) {
        bool fixes_above = true;
        for (std::size_t j = 0; j < i; ++j)
          if (g[base[j]] != base[j]) {
            fixes_above = false;
            break;
          }
        if (fixes_above) lv.gens.push_back(g);
      }
      compute_orbit(lv, degree);
    }

    // Verify all Schreier generators sift to the identity below their level.
    Perm residue;
    bool closed = true;
    for (std::size_t i = 0; i < chain->levels.size() && closed; ++i) {
      const ChainLevel& lv = chain->levels[i];
      for (int p : lv.orbit) {
        for (const Perm& s : lv.gens) {
          const Perm ts = compose(lv.trans_by_point[p], s);
          const Perm schreier = compose(ts, lv.trans_by_point[s[p]].inverse());
          if (schreier.is_identity()) continue;
          Perm h = schreier;
          for (std::size_t j = i + 1; j < chain->levels.size(); ++j) {
            const ChainLevel& deeper = chain->levels[j];
            const int q = h[deeper.base];
            if (!deeper.in_orbit[q]) break;
            h = compose(h, deeper.trans_by_point[q].inverse());
          }
          if (!h.is_identity()) {
            residue = h;
            closed = false;
            break;
          }
        }
        if (!closed) break;
      }
    }
    if (closed) break;
    if (!strong_set.insert(residue).second)
      throw std::logic_error("stabilizer chain: duplicate residue");
    strong.push_back(residue);
  }

  chain->strong_gens = strong;
  chain->order = 1;
  for (const ChainLevel& lv : chain->levels) chain->order *= static_cast<unsigned>(lv.orbit.size());
  return chain;
}

PermGroup::PermGroup() : impl_(std::make_shared<Impl>()) {}

PermGroup PermGroup::trivial(int degree) {
  PermGroup g;
  g.impl_->degree = degree;
  return g;
}

PermGroup PermGroup::from_generators(int degree, std::vector<Perm> gens) {
  if (degree < 0 || degree > kMaxDegree)
    throw input_error("degree " + std::to_string(degree) + " out of range 0.." +
                      std::to_string(kMaxDegree));
  PermGroup g;
  g.impl_->degree = degree;
  std::set<Perm> seen;
  for (Perm& p : gens) {
    if (p.degree() != degree) throw input_error("generator degree mismatch");
    if (!p.is_identity() && seen.insert(p).second) g.impl_->gens.push_back(std::move(p));
  }
  return g;
}

PermGroup PermGroup::symmetric(int degree) {
  if (degree <= 1) return trivial(std::max(degree, 0));
  std::vector<Perm> gens;
  std::vector<int> cyc(degree);
  for (int i = 0; i < degree; ++i) cyc[i] = (i + 1) % degree;
  gens.push_back(Perm::from_images(cyc));
  if (degree > 2) {
    std::vector<int> tr(degree);
    for (int i = 0; i < degree; ++i) tr[i] = i;
    tr[0] = 1;
    tr[1] = 0;
    gens.push_back(Perm::from_images(tr));
  }
  return from_generators(degree, std::move(gens));
}

PermGroup PermGroup::alternating(int degree) {
  if (degree <= 2) return trivial(std::max(degree, 0));
  std::vector<Perm> gens;
  std::vector<int> c3(degree);
  for (int i = 0; i < degree; ++i) c3[i] = i;
  c3[0] = 1;
  c3[1] = 2;
  c3[2] = 0;
  gens.push_back(Perm::from_images(c3));
  if (degree > 3) {
    std::vector<int> big(degree);
    if (degree % 2 == 1) {
      for (int i = 0; i < degree; ++i) big[i] = (i + 1) % degree;  // n-cycle, even
    } else {
      big[0] = 0;
      for (int i = 1; i < degree; ++i) big[i] = i % (degree - 1) + 1;  // (n-1)-cycle
    }
    gens.push_back(Perm::from_images(big));
  }
  return from_generators(degree, std::move(gens));
}

PermGroup PermGroup::cyclic(int n) {
  if (n <= 1) return trivial(std::max(n, 0));
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return from_generators(n, {Perm::from_images(cyc)});
}

PermGroup PermGroup::dihedral(int order) {
  if (order < 2 || order % 2 != 0)
    throw input_error("dihedral order must be even and >= 2, got " + std::to_string(order));
  const int m = order / 2;
  if (m == 1) return from_generators(2, {Perm::parse_cycles("(1 2)", 2)});
  if (m == 2) return from_generators(4, {Perm::parse_cycles("(1 2)", 4), Perm::parse_cycles("(3 4)", 4)});
  std::vector<int> rot(m), refl(m);
  for (int i = 0; i < m; ++i) {
    rot[i] = (i + 1) % m;
    refl[i] = (m - i) % m;
  }
  return from_generators(m, {Perm::from_images(rot), Perm::from_images(refl)});
}

int PermGroup::degree() const { return impl_->degree; }

const std::vector<Perm>& PermGroup::generators() const { return impl_->gens; }

const StabChain& PermGroup::chain() const { return impl_->get_chain(); }

const BigInt& PermGroup::order() const { return chain().order; }

std::uint64_t PermGroup::order_u64() const {
  const BigInt& o = order();
  if (o > BigInt(UINT64_MAX)) throw budget_error("group order exceeds 64-bit range");
  return o.convert_to<std::uint64_t>();
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree()) return false;
  if (p.is_identity()) return true;
  auto [residue, level] = chain().sift(p);
  return residue.is_identity();
}

bool PermGroup::contains_group(const PermGroup& h) const {
  if (h.degree() != degree()) return false;
  for (const Perm& g : h.generators())
    if (!contains(g)) return false;
  return true;
}

bool PermGroup::same_group(const PermGroup& other) const {
  return degree() == other.degree() && order() == other.order() && contains_group(other);
}

std::vector<Perm> PermGroup::elements(std::uint64_t budget) const {
  const StabChain& ch = chain();
  if (ch.order > BigInt(budget))
    throw budget_error("element enumeration budget " + std::to_string(budget) +
                       " exceeded (order " + ch.order.str() + ")");
  // G = union over p of G^(1) * t_p, recursively; deepest level first, orbit
  // points ascending, gives a fixed deterministic order.
  std::vector<Perm> out{Perm(degree())};
  for (std::size_t i = ch.levels.size(); i-- > 0;) {
    const ChainLevel& lv = ch.levels[i];
    std::vector<int> pts = lv.orbit;
    std::sort(pts.begin(), pts.end());
    std::vector<Perm> next;
    next.reserve(out.size() * pts.size());
    for (int p : pts)
      for (const Perm& h : out) next.push_back(compose(h, lv.trans_by_point[p]));
    out = std::move(next);
  }
  return out;
}

PermGroup PermGroup::point_stabilizer(int x) const {
  if (x < 0 || x >= degree()) throw input_error("point_stabilizer: point out of range");
  auto chain = impl_->build_chain({x});
  std::vector<Perm> stab_gens;
  for (const Perm& g : chain->strong_gens)
    if (g[x] == x) stab_gens.push_back(g);
  return from_generators(degree(), std::move(stab_gens));
}

PermGroup PermGroup::conjugated_by(const Perm& g) const {
  std::vector<Perm> gens;
  gens.reserve(impl_->gens.size());
  for (const Perm& h : impl_->gens) gens.push_back(h.conjugated_by(g));
  return from_generators(degree(), std::move(gens));
}

std::vector<int> PermGroup::base() const {
  std::vector<int> out;
  for (const ChainLevel& lv : chain().levels) out.push_back(lv.base);
  return out;
}

std::vector<std::uint64_t> PermGroup::transversal_sizes() const {
  std::vector<std::uint64_t> out;
  for (const ChainLevel& lv : chain().levels) out.push_back(lv.orbit.size());
  return out;
}

namespace {

// BFS over cosets H*t. Identification is "t*s^-1 in H" by linear scan over
// the known representatives; fine for the small indexes this is used at.
// Returns the transversal and, per generator, the induced map on coset
// numbers.
std::pair<std::vector<Perm>, std::vector<std::vector<int>>> coset_table(
    const PermGroup& G, const PermGroup& H, std::uint64_t index_budget) {
  if (G.degree() != H.degree()) throw input_error("coset action: degree mismatch");
  if (!G.contains_group(H)) throw input_error("coset action: H is not a subgroup of G");

  std::vector<Perm> transversal{Perm(G.degree())};
  const auto& gens = G.generators();
  std::vector<std::vector<int>> rows(gens.size());

  for (std::size_t i = 0; i < transversal.size(); ++i) {
    if (transversal.size() > index_budget)
      throw budget_error("coset index exceeds budget " + std::to_string(index_budget));
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Perm u = compose(transversal[i], gens[k]);
      int target = -1;
      for (std::size_t j = 0; j < transversal.size(); ++j) {
        if (H.contains(compose(u, transversal[j].inverse()))) {
          target = static_cast<int>(j);
          break;
        }
      }
      if (target < 0) {
        transversal.push_back(u);
        target = static_cast<int>(transversal.size() - 1);
      }
      rows[k].push_back(target);
    }
  }
  return {std::move(transversal), std::move(rows)};
}

}  // namespace

std::vector<Perm> right_transversal(const PermGroup& G, const PermGroup& H,
                                    std::uint64_t index_budget) {
  return coset_table(G, H, index_budget).first;
}

CosetAction coset_action(const PermGroup& G, const PermGroup& H, std::uint64_t index_budget) {
  auto [transversal, rows] = coset_table(G, H, index_budget);
  const int index = static_cast<int>(transversal.size());
  if (index > kMaxDegree)
    throw budget_error("coset action degree " + std::to_string(index) +
                       " exceeds supported maximum " + std::to_string(kMaxDegree));
  CosetAction act;
  act.transversal = std::move(transversal);
  for (auto& row : rows) {
    row.resize(index, -1);  // rows are complete; resize is a no-op guard
    act.gen_images.push_back(Perm::from_images(std::move(row)));
  }
  act.image = PermGroup::from_generators(index, act.gen_images);
  return act;
}

}  // namespace mindeg
