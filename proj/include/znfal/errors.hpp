#pragma once

#include <stdexcept>
#include <string>

namespace znfal {

/// Bad user-supplied data: malformed files, out-of-range parameters,
/// violated preconditions. Maps to CLI exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A configured resource limit (point count, modulus, monomial count,
/// wall-clock budget) would be exceeded. Maps to CLI exit code 3.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed to hold. Never swallowed; maps to CLI
/// exit code 4.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

#define ZNFAL_REQUIRE(cond, msg) \
    do { if (!(cond)) throw ::znfal::input_error(msg); } while (0)

#define ZNFAL_INVARIANT(cond, msg) \
    do { if (!(cond)) throw ::znfal::internal_error(msg); } while (0)

} // namespace znfal
