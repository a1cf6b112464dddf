#pragma once

#include <stdexcept>
#include <string>

namespace rkbs {

// Bad user-supplied configuration or arguments violating a documented precondition.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// An iterative solver failed to reach its tolerance; never returned as a partial answer.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rkbs
