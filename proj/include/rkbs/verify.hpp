#pragma once

#include <cstdint>
#include <iosfwd>

namespace rkbs {

// Fast cross-module invariant suite: one [ok]/[FAIL] line per check on `out`,
// returns true when every check passes. Deterministic for a fixed seed.
bool verify_suite(uint64_t seed, std::ostream& out);

}  // namespace rkbs
