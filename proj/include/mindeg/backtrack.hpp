#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mindeg/perm_group.hpp"

namespace mindeg {

// Depth-first search over the stabilizer chain for an element of g with the
// prescribed images. Pairs are (point, image), 0-based; inconsistent or
// out-of-range pairs yield nullopt, never a throw.
std::optional<Perm> element_with_images(
    const PermGroup& g, const std::vector<std::pair<int, int>>& pairs);
bool has_element_with_images(const PermGroup& g,
                             const std::vector<std::pair<int, int>>& pairs);

// Centralizer of g in the full symmetric group on g's points. A commuting
// permutation is determined by the image of one point per orbit, so the
// search branches once per orbit and reconstructs the rest by propagation
// along the orbit graph; cross-orbit images arise only between isomorphic
// orbits and contribute the coordinate swaps.
PermGroup centralizer_in_sym_search(const PermGroup& g);

// Normalizer of h in the full symmetric group on h's points. Point-image
// backtrack restricted to the support (everything off the support commutes),
// pruned by orbit sizes and by partial-conjugation extension tests against
// the stabilizer chain of h.
PermGroup normalizer_in_sym(const PermGroup& h);

// Some s with h^s = k in the full symmetric group, or nullopt. Degrees must
// match; same engine and pruning as the normalizer search.
std::optional<Perm> conjugating_element_sym(const PermGroup& h,
                                            const PermGroup& k);

// Some a in the ambient group with h^a = k, or nullopt. Element filter for
// enumerable ambients, point-image search when the ambient is the full
// symmetric group, a parity-corrected symmetric search for the alternating
// group; anything else throws budget_error.
std::optional<Perm> conjugating_element_in(const PermGroup& ambient,
                                           const PermGroup& h,
                                           const PermGroup& k);

}  // namespace mindeg
