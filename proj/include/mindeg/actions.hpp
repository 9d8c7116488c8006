#pragma once

#include <vector>

#include "mindeg/perm_group.hpp"

namespace mindeg {

// Partition of 0..degree-1 into blocks permuted by the group. Blocks are
// sorted internally and listed by least element.
struct BlockSystem {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;  // point -> index into blocks

  int block_count() const { return static_cast<int>(blocks.size()); }
  int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].size()); }
};

// Orbits sorted by least point, each orbit ascending.
std::vector<std::vector<int>> orbits(const PermGroup& g);
bool is_transitive(const PermGroup& g);

// Points fixed by every generator, ascending.
std::vector<int> fixed_points(const PermGroup& g);

// True when every generator maps each block onto a block.
bool is_block_system(const PermGroup& g, const BlockSystem& bs);

// All minimal (unrefinable) nontrivial block systems of a transitive group,
// via pair closures seeded with (0, x). Empty exactly when the group is
// primitive. Throws input_error on intransitive input.
std::vector<BlockSystem> minimal_block_systems(const PermGroup& g);

// The action of g on the blocks (degree = block count) together with the
// restriction of the setwise stabilizer of the block containing point 0 to
// that block (degree = block size, points relabelled in ascending order).
struct BlockAction {
  PermGroup top;          // induced action on blocks
  PermGroup block_group;  // stabilizer of block 0 restricted to block 0
};
BlockAction block_action(const PermGroup& g, const BlockSystem& bs);

// Imprimitive wreath product base^top: `top_count` copies of the base group
// glued block-major (block j occupies points j*base_degree .. +base_degree-1),
// with the top group permuting blocks. Order |base|^b * |top|.
PermGroup wreath_product(const PermGroup& base, const PermGroup& top);

// G x H on the disjoint union of their domains; H's points are shifted by
// G's degree.
PermGroup external_direct_product(const PermGroup& g, const PermGroup& h);

}  // namespace mindeg
