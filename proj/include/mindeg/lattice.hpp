#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mindeg/perm_group.hpp"

namespace mindeg {

// One conjugacy class of subgroups of a fixed ambient group.
struct ClassRecord {
  PermGroup representative;
  BigInt order;
  PermGroup core_in_ambient;  // largest ambient-normal subgroup inside the representative
  bool is_normal = false;
  bool is_nilpotent = false;
  bool is_perfect = false;
  std::uint64_t class_size = 1;  // number of ambient conjugates
  int class_id = -1;
  // Class the representative was extended from, with prime index; -1 for
  // seeds (the trivial class and the perfect classes).
  int parent_class = -1;
};

enum class LatticeMethod { cyclic_extension, brute_force };

struct SubgroupLattice {
  PermGroup ambient;
  std::vector<ClassRecord> classes;
  LatticeMethod method = LatticeMethod::cyclic_extension;
  // False when a budget cut the enumeration short. `completeness_assumed`
  // marks lattices whose perfect seed list rests on the classification of
  // perfect subgroups of Sym(7)..Sym(10) instead of an internal check;
  // reports surface the distinction.
  bool complete = false;
  bool completeness_assumed = false;

  const ClassRecord& class_by_id(int id) const;
};

struct LatticeOptions {
  std::size_t max_classes = 60'000;
  std::string cache_dir;  // empty disables caching
  int jobs = 1;           // worker threads within one extension generation
};

// Independent oracle: every subgroup by closure over cyclic subgroups and
// pairwise joins, then folded into conjugacy classes. Exponential in spirit;
// guarded by the order limit (budget_error beyond it).
SubgroupLattice brute_force_subgroups(const PermGroup& g,
                                      std::uint64_t order_limit = 2000);

// Representatives of every conjugacy class of nontrivial perfect subgroups
// of Sym(n), n <= 10. Degrees 7..10 rest on the published classification of
// such subgroups; callers see that through `completeness_assumed`.
std::vector<PermGroup> perfect_seed_catalog(int degree);

// Cyclic-extension enumeration: seeds (trivial + perfect classes) are
// repeatedly extended by elements of prime order modulo the subgroup, drawn
// from normalizer conjugacy classes, with conjugacy dedup each generation.
// Budget exhaustion returns a usable lattice with complete=false.
SubgroupLattice subgroup_classes(const PermGroup& ambient,
                                 const LatticeOptions& opt = {});

std::vector<const ClassRecord*> normal_subgroup_classes(const SubgroupLattice& lat);

// Cache files: stanza text keyed by ambient spec + engine version.
// Loads revalidate orders and ambient membership and reject anything stale
// or inconsistent instead of migrating it.
std::string lattice_to_text(const SubgroupLattice& lat, const std::string& ambient_spec);
SubgroupLattice lattice_from_text(const std::string& text, const PermGroup& ambient,
                                  const std::string& ambient_spec);
std::string lattice_cache_path(const std::string& dir, const std::string& ambient_spec);
void save_lattice_cache(const SubgroupLattice& lat, const std::string& dir,
                        const std::string& ambient_spec);
std::optional<SubgroupLattice> load_lattice_cache(const PermGroup& ambient,
                                                  const std::string& dir,
                                                  const std::string& ambient_spec);

// Canonical one-line description "deg n: gens" used as the default cache key
// and in reports.
std::string canonical_spec(const PermGroup& g);

}  // namespace mindeg
