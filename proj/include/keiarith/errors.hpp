#pragma once

#include <stdexcept>
#include <string>

namespace keiarith {

// Raised when a computation would exceed a configured resource limit
// (state-space size, sieve length, discriminant magnitude, ...).
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a coloring formula is requested for a kei expression outside
// the family with known closed forms. Never silently returns a wrong count.
struct unsupported_kei_error : std::runtime_error {
    explicit unsupported_kei_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace keiarith
