#pragma once

namespace mindeg {

// Bumped whenever lattice/cache or report semantics change; cache files and
// reports carrying a different version are rejected as stale.
inline constexpr char kEngineVersion[] = "1.0.0";

}  // namespace mindeg
