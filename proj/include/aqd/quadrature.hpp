// quadrature.hpp: globally adaptive Gauss-Kronrod (G7/K15) integration

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace aqd::quadrature {

struct Options {
    double rel_tol{1e-9};
    double abs_tol{1e-14};
    int max_depth{30};                 // bisections allowed below each initial panel
    std::size_t max_intervals{2'000'000};
};

struct Result {
    double value{};
    double abs_error{};
    std::size_t evaluations{};
    std::size_t intervals{};
    bool converged{};
};

struct RuleEstimate {
    double kronrod{};
    double gauss{};
    double absolute{};  // Kronrod estimate of the integral of |f|
};

/// One 15-point Kronrod / embedded 7-point Gauss evaluation on [a, b].
RuleEstimate gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

/// Integrates f over [breakpoints.front(), breakpoints.back()], starting from the
/// panels the breakpoints define and bisecting the panel with the largest error
/// estimate until the summed estimate drops below max(abs_tol, rel_tol * |I|).
/// Deterministic: same inputs give bit-identical outputs. Never throws on
/// non-convergence; check Result::converged.
Result integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                 const Options& opts);

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts);

/// n equal panels on [a, b] as a breakpoint list.
std::vector<double> uniform_breakpoints(double a, double b, std::size_t panels);

/// Neumaier-compensated sum, fixed left-to-right order.
double compensated_sum(std::span<const double> terms);

class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + correction_; }

private:
    double sum_{0.0};
    double correction_{0.0};
};

}  // namespace aqd::quadrature
