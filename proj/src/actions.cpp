#include "mindeg/actions.hpp"

#include <algorithm>
#include <numeric>

#include "mindeg/errors.hpp"

namespace mindeg {

std::vector<std::vector<int>> orbits(const PermGroup& g) {
  const int n = g.degree();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit{start};
    seen[start] = 1;
    for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
      for (const Perm& h : g.generators()) {
        const int q = h[orbit[qi]];
        if (!seen[q]) {
          seen[q] = 1;
          orbit.push_back(q);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

bool is_transitive(const PermGroup& g) { return g.degree() > 0 && orbits(g).size() == 1; }

std::vector<int> fixed_points(const PermGroup& g) {
  std::vector<int> out;
  for (int x = 0; x < g.degree(); ++x) {
    bool fixed = true;
    for (const Perm& h : g.generators())
      if (h[x] != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

bool is_block_system(const PermGroup& g, const BlockSystem& bs) {
  for (const Perm& h : g.generators()) {
    for (const auto& block : bs.blocks) {
      const int target = bs.block_of[h[block[0]]];
      for (int x : block)
        if (bs.block_of[h[x]] != target) return false;
    }
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);  // keep the least element as representative
    parent[b] = a;
    return true;
  }
};

// Finest block system in which a and b share a block: close the partition
// {{a,b}} under the generators by propagating merges to images.
BlockSystem pair_closure(const PermGroup& g, int a, int b) {
  const int n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<int, int>> pending{{a, b}};
  while (!pending.empty()) {
    auto [u, v] = pending.back();
    pending.pop_back();
    u = uf.find(u);
    v = uf.find(v);
    if (u == v) continue;
    uf.unite(u, v);
    for (const Perm& h : g.generators()) pending.emplace_back(h[u], h[v]);
  }
  BlockSystem bs;
  bs.block_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    const int r = uf.find(x);
    if (bs.block_of[r] < 0) {
      bs.block_of[r] = static_cast<int>(bs.blocks.size());
      bs.blocks.emplace_back();
    }
    bs.block_of[x] = bs.block_of[r];
    bs.blocks[bs.block_of[x]].push_back(x);
  }
  return bs;
}

}  // namespace

std::vector<BlockSystem> minimal_block_systems(const PermGroup& g) {
  if (!is_transitive(g)) throw input_error("minimal_block_systems: group is not transitive");
  const int n = g.degree();

  // Candidate systems: closures of (0, x). The block through 0 of any
  // minimal system is the closure of (0, x) for each x it contains, so the
  // inclusion-minimal nontrivial closures are exactly the minimal systems.
  std::vector<BlockSystem> candidates;
  for (int x = 1; x < n; ++x) {
    BlockSystem bs = pair_closure(g, 0, x);
    if (bs.block_count() <= 1 || bs.block_size() <= 1) continue;  // trivial
    bool dup = false;
    for (const auto& other : candidates)
      if (other.blocks == bs.blocks) {
        dup = true;
        break;
      }
    if (!dup) candidates.push_back(std::move(bs));
  }

  std::vector<BlockSystem> out;
  for (const auto& bs : candidates) {
    const auto& b0 = bs.blocks[bs.block_of[0]];
    bool minimal = true;
    for (const auto& other : candidates) {
      if (&other == &bs) continue;
      const auto& o0 = other.blocks[other.block_of[0]];
      if (o0.size() < b0.size() && std::includes(b0.begin(), b0.end(), o0.begin(), o0.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(bs);
  }
  return out;
}

BlockAction block_action(const PermGroup& g, const BlockSystem& bs) {
  if (!is_block_system(g, bs))
    throw input_error("block_action: not a block system for this group");
  const int b = bs.block_count();

  std::vector<Perm> top_gens;
  for (const Perm& h : g.generators()) {
    std::vector<int> im(b);
    for (int i = 0; i < b; ++i) im[i] = bs.block_of[h[bs.blocks[i][0]]];
    top_gens.push_back(Perm::from_images(std::move(im)));
  }
  PermGroup top = PermGroup::from_generators(b, std::move(top_gens));

  // Setwise stabilizer of the block through point 0, by orbit/Schreier
  // generators of the block action.
  const int home = bs.block_of[0];
  std::vector<int> reached{home};
  std::vector<Perm> rep(b);
  std::vector<char> seen(b, 0);
  seen[home] = 1;
  rep[home] = Perm(g.degree());
  std::vector<Perm> stab_gens;
  for (std::size_t qi = 0; qi < reached.size(); ++qi) {
    const int blk = reached[qi];
    for (const Perm& h : g.generators()) {
      const int img = bs.block_of[h[bs.blocks[blk][0]]];
      if (!seen[img]) {
        seen[img] = 1;
        rep[img] = compose(rep[blk], h);
        reached.push_back(img);
      } else {
        stab_gens.push_back(compose(compose(rep[blk], h), rep[img].inverse()));
      }
    }
  }

  // Restrict to the home block, relabelling its points in ascending order.
  const auto& home_pts = bs.blocks[home];
  const int bsz = static_cast<int>(home_pts.size());
  std::vector<int> local(g.degree(), -1);
  for (int i = 0; i < bsz; ++i) local[home_pts[i]] = i;
  std::vector<Perm> restricted;
  for (const Perm& s : stab_gens) {
    std::vector<int> im(bsz);
    for (int i = 0; i < bsz; ++i) im[i] = local[s[home_pts[i]]];
    restricted.push_back(Perm::from_images(std::move(im)));
  }
  return {std::move(top), PermGroup::from_generators(bsz, std::move(restricted))};
}

PermGroup wreath_product(const PermGroup& base, const PermGroup& top) {
  const int a = base.degree();
  const int b = std::max(top.degree(), 1);
  const int n = a * b;
  if (a < 1) throw input_error("wreath_product: base degree must be positive");
  if (n > kMaxDegree)
    throw input_error("wreath_product: degree " + std::to_string(n) + " exceeds maximum");

  auto base_copy_in_block = [&](const Perm& g, int blk) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    for (int x = 0; x < a; ++x) im[blk * a + x] = blk * a + g[x];
    return Perm::from_images(std::move(im));
  };

  std::vector<Perm> gens;
  for (const Perm& g : base.generators()) gens.push_back(base_copy_in_block(g, 0));
  for (const Perm& t : top.generators()) {
    std::vector<int> im(n);
    for (int blk = 0; blk < b; ++blk)
      for (int x = 0; x < a; ++x) im[blk * a + x] = t[blk] * a + x;
    gens.push_back(Perm::from_images(std::move(im)));
  }
  PermGroup w = PermGroup::from_generators(n, gens);

  BigInt expected = 1;
  for (int i = 0; i < b; ++i) expected *= base.order();
  expected *= top.order();
  if (w.order() != expected) {
    // The block-1 copy only spreads to every block when the top group is
    // transitive; otherwise add explicit copies to honour the order
    // contract.
    for (int blk = 1; blk < b; ++blk)
      for (const Perm& g : base.generators()) gens.push_back(base_copy_in_block(g, blk));
    w = PermGroup::from_generators(n, std::move(gens));
    if (w.order() != expected) throw std::logic_error("wreath_product: order mismatch");
  }
  return w;
}

PermGroup external_direct_product(const PermGroup& g, const PermGroup& h) {
  const int m = g.degree();
  const int n = m + h.degree();
  if (n > kMaxDegree)
    throw input_error("direct product degree " + std::to_string(n) + " exceeds maximum");
  std::vector<Perm> gens;
  for (const Perm& p : g.generators()) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    for (int x = 0; x < m; ++x) im[x] = p[x];
    gens.push_back(Perm::from_images(std::move(im)));
  }
  for (const Perm& p : h.generators()) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    for (int x = 0; x < h.degree(); ++x) im[m + x] = m + p[x];
    gens.push_back(Perm::from_images(std::move(im)));
  }
  return PermGroup::from_generators(n, std::move(gens));
}

}  // namespace mindeg
