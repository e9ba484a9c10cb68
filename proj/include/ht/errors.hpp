#pragma once
#include <stdexcept>
#include <string>

namespace ht {

// Error taxonomy shared by the library and the CLI.  Each class corresponds
// to one process exit code so that failures are machine-distinguishable.

// Malformed or out-of-range input (bad labels, unknown file contents,
// mismatched ground sets ...).  CLI exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& m) : std::runtime_error(m) {}
};

// Structurally valid input that violates a documented precondition of the
// operation (wrong valence, reducible input where irreducible is required,
// ...).  CLI exit code 3.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& m) : std::runtime_error(m) {}
};

// A resource budget was exhausted (term-count cap, retry cap, size limits).
// CLI exit code 4.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& m) : std::runtime_error(m) {}
};

// An internal cross-check failed: two methods that must agree disagreed, an
// exact division left a remainder, or a guaranteed postcondition did not
// hold.  CLI exit code 5.
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& m) : std::runtime_error(m) {}
};

} // namespace ht
