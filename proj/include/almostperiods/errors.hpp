#pragma once

#include <stdexcept>
#include <string>

namespace almostperiods {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation would need series digits beyond the guaranteed precision.
// The caller must rebuild the model with a larger N (or Witt length m).
struct precision_error : error {
    explicit precision_error(const std::string& msg) : error(msg) {}
};

// An exponent denominator would exceed p^L.
struct level_error : error {
    explicit level_error(const std::string& msg) : error(msg) {}
};

// Malformed or inconsistent input (parse errors, parameter mismatch).
struct input_error : error {
    explicit input_error(const std::string& msg) : error(msg) {}
};

// A table or enumeration would exceed the configured cell budget.
struct budget_error : error {
    explicit budget_error(const std::string& msg) : error(msg) {}
};

} // namespace almostperiods
