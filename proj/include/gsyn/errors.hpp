#pragma once

#include <stdexcept>
#include <string>

namespace gsyn {

// Malformed input: formula syntax, unknown identifiers, bad file sections.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A construction or search exceeded its configured size budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant or requested property does not hold.
struct property_error : std::runtime_error {
    explicit property_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gsyn
