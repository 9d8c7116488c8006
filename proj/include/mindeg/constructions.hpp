#pragma once

#include <string>
#include <vector>

#include "mindeg/perm_group.hpp"

namespace mindeg {

// Fixed example groups used by the verification suites and the spec
// language. Construction re-checks the documented order of each group (and
// the cheap structural facts) and throws logic_error on mismatch, so a
// returned group is always the intended one. Unknown keys raise input_error.
//
//   H7        order 12 on 7 points, orbits of sizes 3 and 4
//   K8        order 56 on 8 points, primitive
//   L8        order 168 on 8 points, contains K8
//   H7xC2_9   order 24 on 9 points, H7-like on 1..7 with a 2-point orbit
//   C3wrS3    order 162 on 9 points, imprimitive wreath product
//   G225      order 80 on 10 points, elementary-abelian base by a 5-cycle
//   G225xC2   order 160 on 10 points, G225 with its centralizing involution
PermGroup named_group(const std::string& key);

// The accepted keys, in a fixed order.
std::vector<std::string> named_group_keys();

}  // namespace mindeg
