#pragma once

#include <stdexcept>
#include <string>

namespace pfcm {

// Invalid algorithm or experiment configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable, malformed or invariant-violating input data (CLI exit code 2).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerically degenerate state reached at runtime, e.g. a cluster whose
// weights vanish or coincident centroids in a validity index (CLI exit code 3).
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pfcm
