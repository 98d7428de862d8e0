#pragma once

#include <stdexcept>
#include <string>

namespace icmod {

/// Caller passed arguments outside an operation's domain (CLI exit code 2).
struct usage_error : std::invalid_argument {
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A theorem-backed internal check failed: inexact division, negative
/// coefficient, broken palindromicity.  Signals a bug or a bad input table
/// rather than a bad argument (CLI exit code 1).
struct computation_error : std::runtime_error {
    explicit computation_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require_genus(int g) {
    if (g < 2) throw usage_error("genus g >= 2 required, got g = " + std::to_string(g));
}

} // namespace icmod
