#include "mindeg/mu.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mindeg/actions.hpp"
#include "mindeg/errors.hpp"
#include "mindeg/group_spec.hpp"
#include "mindeg/structure.hpp"
#include "mindeg/version.hpp"

#include "text_util.hpp"

namespace mindeg {

namespace {

// ---------- cover search ----------

struct Cand {
  int id = -1;
  std::uint64_t weight = 0;  // index of the class in the ambient
  std::uint64_t mask = 0;    // minimal normals outside the core
};

struct Cover {
  std::uint64_t weight = 0;
  std::vector<int> ids;  // ascending
};

// Lighter wins; then fewer classes, then the lexicographically least ids.
bool better(const Cover& a, const Cover& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.ids.size() != b.ids.size()) return a.ids.size() < b.ids.size();
  return a.ids < b.ids;
}

// Optimal weighted cover of the minimal normal subgroups by subgroup
// classes. The ambient must be nontrivial and the lattice complete.
Cover solve_cover(const SubgroupLattice& lat) {
  const PermGroup& amb = lat.ambient;
  const std::vector<PermGroup> mn = minimal_normal_subgroups(amb);
  if (mn.size() > 64)
    throw budget_error("mu: more than 64 minimal normal subgroups");
  const int m = static_cast<int>(mn.size());
  const std::uint64_t all = m == 64 ? ~0ull : (1ull << m) - 1;

  // The one-stabilizer-per-orbit collection is faithful, so its weight (the
  // number of moved points) bounds the optimum; heavier classes are useless.
  std::uint64_t ub = 0;
  for (const auto& o : orbits(amb))
    if (o.size() > 1) ub += o.size();

  std::vector<Cand> cands;
  for (const ClassRecord& c : lat.classes) {
    const BigInt idx = amb.order() / c.order;
    if (idx > ub) continue;
    std::uint64_t mask = 0;
    for (int j = 0; j < m; ++j)
      if (!c.core_in_ambient.contains_group(mn[j])) mask |= 1ull << j;
    if (mask == 0) continue;
    cands.push_back(
        {c.class_id, idx.convert_to<std::uint64_t>(), mask});
  }

  // Drop classes that cannot appear in the best cover: some other class
  // covers at least as much for strictly less, or for the same weight with
  // a smaller id. The rule is a strict partial order, so of two identical
  // candidates exactly one survives, and replacing a dropped class by its
  // dominator never worsens (weight, count, ids); the optimum over the
  // survivors is the global one.
  auto dominates = [](const Cand& a, const Cand& b) {
    if ((a.mask & b.mask) != b.mask) return false;
    return a.weight < b.weight || (a.weight == b.weight && a.id < b.id);
  };
  std::vector<Cand> live;
  for (const Cand& b : cands) {
    bool dead = false;
    for (const Cand& a : cands)
      if (a.id != b.id && dominates(a, b)) {
        dead = true;
        break;
      }
    if (!dead) live.push_back(b);
  }

  std::vector<std::vector<int>> cover_of(m);  // candidate indexes per bit
  std::vector<std::uint64_t> cheapest(m, 0);
  std::vector<std::uint64_t> touch(m, 0);
  for (int j = 0; j < m; ++j) {
    std::uint64_t cheap = ~0ull;
    for (std::size_t ci = 0; ci < live.size(); ++ci) {
      if (!(live[ci].mask >> j & 1)) continue;
      cover_of[j].push_back(static_cast<int>(ci));
      cheap = std::min(cheap, live[ci].weight);
      touch[j] |= live[ci].mask;
    }
    if (cover_of[j].empty())
      throw std::logic_error("mu: uncoverable minimal normal subgroup");
    cheapest[j] = cheap;
  }

  // Admissible bound: walk the uncovered bits, charge each one the weight
  // of its cheapest cover, and block every bit any of its covers touches,
  // so no candidate is charged twice.
  auto lower_bound = [&](std::uint64_t covered) {
    std::uint64_t lb = 0;
    std::uint64_t blocked = covered;
    for (int j = 0; j < m; ++j) {
      if (blocked >> j & 1) continue;
      lb += cheapest[j];
      blocked |= touch[j];
    }
    return lb;
  };

  Cover best;
  bool have_best = false;
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, std::uint64_t covered, std::uint64_t w) -> void {
    if (covered == all) {
      Cover cur{w, chosen};
      std::sort(cur.ids.begin(), cur.ids.end());
      if (!have_best || better(cur, best)) {
        best = std::move(cur);
        have_best = true;
      }
      return;
    }
    // prune strictly: covers tying the best weight still compete on ids
    if (w + lower_bound(covered) > (have_best ? best.weight : ub)) return;
    int bit = -1;
    std::size_t fanout = ~std::size_t{0};
    for (int j = 0; j < m; ++j)
      if (!(covered >> j & 1) && cover_of[j].size() < fanout) {
        bit = j;
        fanout = cover_of[j].size();
      }
    for (int ci : cover_of[bit]) {
      chosen.push_back(live[ci].id);
      self(self, covered | live[ci].mask, w + live[ci].weight);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  if (!have_best) throw std::logic_error("mu: cover search found nothing");
  return best;
}

// ---------- embedding ----------

// Disjoint union of the coset actions of the witness subgroups, block by
// block in witness order.
PermGroup build_embedding(const PermGroup& g, const std::vector<PermGroup>& ws,
                          std::uint64_t points) {
  if (ws.empty()) {
    if (!g.is_trivial())
      throw std::logic_error("embedding without witness subgroups");
    return PermGroup::trivial(0);
  }
  if (points > static_cast<std::uint64_t>(kMaxDegree))
    throw budget_error("mu: embedding needs more points than the engine supports");
  const int n = static_cast<int>(points);
  std::vector<CosetAction> acts;
  acts.reserve(ws.size());
  for (const PermGroup& w : ws) acts.push_back(coset_action(g, w));
  std::vector<Perm> gens;
  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    std::vector<int> img(n);
    int off = 0;
    for (const CosetAction& ca : acts) {
      const Perm& p = ca.gen_images[k];
      for (int x = 0; x < p.degree(); ++x) img[off + x] = off + p[x];
      off += p.degree();
    }
    if (off != n) throw std::logic_error("embedding point count mismatch");
    gens.push_back(Perm::from_images(std::move(img)));
  }
  PermGroup e = PermGroup::from_generators(n, std::move(gens));
  if (e.order() != g.order())
    throw std::logic_error("embedding is not faithful");
  return e;
}

bool fail_reason(std::string* reason, const char* msg) {
  if (reason) *reason = msg;
  return false;
}

// Checks everything about a certificate except the embedding.
bool check_witness(const PermGroup& g, const MuCertificate& cert,
                   std::string* reason) {
  if (!cert.witness.empty() &&
      cert.witness.size() != cert.witness_groups.size())
    return fail_reason(reason, "witness ids and witness groups disagree");
  if (g.is_trivial()) {
    if (cert.mu != 0)
      return fail_reason(reason, "nonzero mu for the trivial group");
    if (!cert.witness_groups.empty() || !cert.witness.empty())
      return fail_reason(reason, "nonempty witness for the trivial group");
    return true;
  }
  if (cert.mu == 0) return fail_reason(reason, "mu 0 for a nontrivial group");
  if (cert.witness_groups.empty())
    return fail_reason(reason, "empty witness for a nontrivial group");
  BigInt sum = 0;
  for (const PermGroup& w : cert.witness_groups) {
    if (w.degree() != g.degree())
      return fail_reason(reason, "witness degree differs from the group");
    if (!g.contains_group(w))
      return fail_reason(reason, "witness is not a subgroup");
    sum += g.order() / w.order();
  }
  if (sum != cert.mu)
    return fail_reason(reason, "witness indexes do not sum to mu");
  PermGroup inter = g;
  for (const PermGroup& w : cert.witness_groups) {
    inter = intersection(inter, core(g, w));
    if (inter.is_trivial()) break;
  }
  if (!inter.is_trivial())
    return fail_reason(reason, "witness cores intersect nontrivially");
  return true;
}

// ---------- memoized values for the wright scan ----------

// Key: elements of the group written over its support (moved points
// relabelled in ascending order), sorted. Hits exactly the repeats that
// show up when many classes share the same nilpotent subgroups.
std::string element_key(const PermGroup& g) {
  const std::vector<Perm> els = g.elements(4096);
  std::vector<int> rank(g.degree(), -1);
  int points = 0;
  for (int x = 0; x < g.degree(); ++x) {
    for (const Perm& p : els)
      if (p[x] != x) {
        rank[x] = points++;
        break;
      }
  }
  std::vector<std::string> rows;
  rows.reserve(els.size());
  for (const Perm& p : els) {
    std::string row(points, '\0');
    for (int x = 0; x < g.degree(); ++x)
      if (rank[x] >= 0) row[rank[x]] = static_cast<char>(rank[p[x]]);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  std::string key(1, static_cast<char>(points));
  for (const std::string& r : rows) key += r;
  return key;
}

std::mutex memo_mutex;
std::map<std::string, std::uint64_t> memo;

BigInt bigint_from_text(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw input_error("certificate: bad integer '" + s + "'");
  return BigInt(s);
}

}  // namespace

std::uint64_t mu_value(const PermGroup& g, const LatticeOptions& opt) {
  if (g.is_trivial()) return 0;
  std::string key;
  const bool small = g.order() <= 4096;
  if (small) {
    key = element_key(g);
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const std::uint64_t v = mu(subgroup_classes(g, opt)).mu;
  if (small) {
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(std::move(key), v);
  }
  return v;
}

std::uint64_t mu_by_exhaustive_search(const SubgroupLattice& lat) {
  if (!lat.complete)
    throw budget_error("exhaustive mu needs a complete lattice");
  const PermGroup& amb = lat.ambient;
  const std::uint64_t whole = amb.order_u64();

  // Unreduced candidates: every class, its recomputed core, cheap first so
  // a light cover is found early.
  struct Simple {
    std::uint64_t weight;
    PermGroup core;
  };
  std::vector<Simple> cands;
  cands.reserve(lat.classes.size());
  for (const ClassRecord& c : lat.classes) {
    const BigInt idx = amb.order() / c.order;
    cands.push_back(
        {idx.convert_to<std::uint64_t>(), core(amb, c.representative)});
  }
  std::stable_sort(
      cands.begin(), cands.end(),
      [](const Simple& a, const Simple& b) { return a.weight < b.weight; });

  std::uint64_t best = whole + 1;  // the trivial class alone costs `whole`
  auto rec = [&](auto&& self, std::size_t i, const PermGroup& inter,
                 std::uint64_t w) -> void {
    if (inter.is_trivial()) {
      best = std::min(best, w);
      return;
    }
    if (i == cands.size() || w + 1 >= best) return;
    if (w + cands[i].weight < best)
      self(self, i + 1, intersection(inter, cands[i].core),
           w + cands[i].weight);
    self(self, i + 1, inter, w);
  };
  rec(rec, 0, amb, 0);
  return best;
}

MuCertificate mu(const SubgroupLattice& lat) {
  const PermGroup& g = lat.ambient;
  MuCertificate cert;
  if (g.is_trivial()) {
    cert.embedding = PermGroup::trivial(0);
  } else {
    if (!lat.complete)
      throw budget_error("mu needs a complete subgroup lattice");
    Cover cov = solve_cover(lat);
    cert.mu = cov.weight;
    cert.witness = std::move(cov.ids);
    cert.witness_groups.reserve(cert.witness.size());
    for (int id : cert.witness)
      cert.witness_groups.push_back(lat.class_by_id(id).representative);
    cert.embedding = build_embedding(g, cert.witness_groups, cert.mu);
  }
  std::string why;
  if (!verify_certificate(g, cert, &why))
    throw std::logic_error("solver certificate failed re-verification: " + why);
  return cert;
}

MuCertificate mu(const PermGroup& g, const LatticeOptions& opt) {
  return mu(subgroup_classes(g, opt));
}

PermGroup minimal_embedding(const PermGroup& g, MuCertificate& cert) {
  std::string why;
  if (!check_witness(g, cert, &why))
    throw input_error("certificate does not verify: " + why);
  cert.embedding = build_embedding(g, cert.witness_groups, cert.mu);
  return cert.embedding;
}

std::optional<int> in_wright_class(const SubgroupLattice& lat,
                                   const LatticeOptions& opt) {
  const std::uint64_t target = mu(lat).mu;
  for (std::size_t i = lat.classes.size(); i-- > 0;) {
    const ClassRecord& c = lat.classes[i];
    if (!c.is_nilpotent) continue;
    const std::uint64_t v = mu_value(c.representative, opt);
    if (v > target)
      throw std::logic_error("subgroup needs more points than its group");
    if (v == target) return c.class_id;
  }
  return std::nullopt;
}

std::optional<int> in_wright_class(const PermGroup& g,
                                   const LatticeOptions& opt) {
  return in_wright_class(subgroup_classes(g, opt), opt);
}

bool verify_certificate(const PermGroup& g, const MuCertificate& cert,
                        std::string* reason) {
  if (!check_witness(g, cert, reason)) return false;
  if (static_cast<std::uint64_t>(cert.embedding.degree()) != cert.mu)
    return fail_reason(reason, "embedding degree differs from mu");
  if (cert.mu == 0) return true;  // a degree-0 group is the trivial group
  PermGroup rebuilt;
  try {
    rebuilt = build_embedding(g, cert.witness_groups, cert.mu);
  } catch (const budget_error&) {
    return fail_reason(reason, "embedding exceeds the engine point limit");
  }
  if (!rebuilt.same_group(cert.embedding))
    return fail_reason(reason, "embedding is not the coset action of the witness");
  return true;
}

Stanza certificate_to_stanza(const PermGroup& g, const MuCertificate& cert) {
  Stanza st;
  st.name = "mu-certificate";
  st.add("engine", kEngineVersion);
  st.add("group", canonical_spec(g));
  st.add("order", g.order().str());
  st.add_int("mu", static_cast<long long>(cert.mu));
  st.add_int("witness-count",
             static_cast<long long>(cert.witness_groups.size()));
  for (std::size_t i = 0; i < cert.witness_groups.size(); ++i) {
    const std::string head = "witness-" + std::to_string(i);
    st.add(head, gens_to_text(cert.witness_groups[i]));
    if (i < cert.witness.size()) st.add_int(head + "-id", cert.witness[i]);
  }
  st.add_int("embedding-degree", cert.embedding.degree());
  st.add("embedding", gens_to_text(cert.embedding));
  if (cert.wright_witness >= 0)
    st.add_int("wright-witness", cert.wright_witness);
  return st;
}

std::pair<PermGroup, MuCertificate> certificate_from_stanza(const Stanza& st) {
  if (st.name != "mu-certificate")
    throw input_error("expected a mu-certificate stanza, got [" + st.name + "]");
  PermGroup g = group_from_spec(st.get("group"));
  if (g.order() != bigint_from_text(st.get("order")))
    throw input_error("certificate order does not match its group");
  MuCertificate cert;
  const long long mu_field = st.get_int("mu");
  if (mu_field < 0) throw input_error("certificate: negative mu");
  cert.mu = static_cast<std::uint64_t>(mu_field);
  const long long count = st.get_int("witness-count");
  if (count < 0) throw input_error("certificate: negative witness count");
  bool all_ids = true;
  for (long long i = 0; i < count; ++i) {
    const std::string head = "witness-" + std::to_string(i);
    cert.witness_groups.push_back(gens_from_text(st.get(head), g.degree()));
    all_ids = all_ids && st.has(head + "-id");
  }
  if (all_ids)
    for (long long i = 0; i < count; ++i)
      cert.witness.push_back(static_cast<int>(
          st.get_int("witness-" + std::to_string(i) + "-id")));
  const long long ed = st.get_int("embedding-degree");
  if (ed < 0 || ed > kMaxDegree)
    throw input_error("certificate: embedding degree out of range");
  cert.embedding = gens_from_text(st.get("embedding"), static_cast<int>(ed));
  if (st.has("wright-witness"))
    cert.wright_witness = static_cast<int>(st.get_int("wright-witness"));
  return {std::move(g), std::move(cert)};
}

}  // namespace mindeg
