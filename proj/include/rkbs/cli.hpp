#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rkbs::cli {

// Entry point shared by the binary and the tests; `args` excludes the program
// name. CSV goes to --out (written atomically) or to `out` when --out is
// absent; human-readable summaries go to `err`. Exit codes: 0 ok, 2 bad
// config, 3 solver failure, 4 verification failure, 1 anything unexpected.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rkbs::cli
