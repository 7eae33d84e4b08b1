#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Invalid user-facing input: malformed config, bad parameters, schema violations.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A computation was rejected on numeric-feasibility grounds: quadrature rule
/// too weak for the requested accuracy, truncation losing too much mass, or a
/// self-check (order doubling, closed-form anchor) failing its threshold.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bergman
