// errors.hpp: exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace aqd {

/// Malformed or out-of-range user input (config files, CLI grids, parameters).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive integration ran out of subdivision depth before meeting its tolerance.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double partial_estimate, double error_bound)
        : std::runtime_error(what), partial_(partial_estimate), error_bound_(error_bound) {}

    double partial_estimate() const noexcept { return partial_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double partial_;
    double error_bound_;
};

}  // namespace aqd
