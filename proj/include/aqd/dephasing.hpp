// dephasing.hpp: dephasing function gamma(t) of the dot and its long-time forms

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "aqd/physical_system.hpp"

namespace aqd {

struct QuadratureConfig {
    double k_max_factor{8.0};         // cutoff k_max = factor / sigma
    double rel_tol{1e-9};
    double abs_tol{1e-14};
    int max_panel_depth{30};
    int oscillation_panels_per_period{8};
    double dos_prefactor_scale{1.0};  // fault-injection hook for validation; leave at 1

    void validate() const;
};

struct GammaEstimate {
    double value{};
    double abs_error{};  // quadrature estimate plus the Gaussian tail bound beyond k_max
};

/// gamma(t) by adaptive quadrature. Panels are aligned so each cosine period on
/// [0, k_max] holds at least oscillation_panels_per_period of them.
/// Throws NonConvergence (with partial estimate) if max_panel_depth is exhausted.
GammaEstimate gamma_of_t(const SystemParams& params, const QuadratureConfig& quad, double t);

/// e^{-gamma(t)}.
double coherence_of_t(const SystemParams& params, const QuadratureConfig& quad, double t);

/// gamma(t) with coth replaced by exactly 1; the temperature field is ignored.
GammaEstimate gamma_zero_temperature(const SystemParams& params, const QuadratureConfig& quad,
                                     double t);

// Long-time (t >> sigma/c) closed forms. Each uses n0 = l^-D of its own branch.

/// 1D decay rate (kappa/g)^2 m c k_B T / (2 hbar^2 n0), in 1/s.
double decay_rate_1d(const SystemParams& params);
/// 2D power-law exponent nu = (kappa/g)^2 m k_B T / (2 pi hbar^2 n0).
double power_law_exponent_2d(const SystemParams& params);
/// 3D plateau exponent (kappa/g)^2 m k_B T / ((2 pi)^{3/2} hbar^2 n0 sigma).
double plateau_exponent_3d(const SystemParams& params);

struct AsymptoticFit {
    int dimension_branch{};
    double rate_or_exponent{};  // fixed from the closed form, never fitted
    double constant{1.0};       // C_T (1D), C_T' (2D), exactly 1 (3D)
    double window_lo_s{};
    double window_hi_s{};
    double fit_residual{};      // max |log-coherence - model| over the samples
    int samples{};
};

class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, AsymptoticFit fit)
        : std::runtime_error(what), fit_(fit) {}
    const AsymptoticFit& fit() const noexcept { return fit_; }

private:
    AsymptoticFit fit_;
};

struct AsymptoticValue {
    double coherence{};
    double constant{};
    bool constant_fitted{};
};

/// Closed-form long-time coherence for branch 1, 2 or 3. Without a fit the
/// constants C_T, C_T' are taken as 1 and constant_fitted is false.
AsymptoticValue asymptotic_coherence(const SystemParams& params, int branch, double t,
                                     const std::optional<AsymptoticFit>& fit = std::nullopt);

inline constexpr double kFitResidualLimit1d = 1e-3;
inline constexpr double kFitResidualLimit2d = 1e-2;

/// One-parameter least-squares fit of log e^{-gamma} against the branch's
/// functional form (affine in t for 1D, affine in log t for 2D) with the
/// slope/exponent pinned. The window must lie in [5, 100] sigma/c.
/// Throws FitError if the residual exceeds the branch limit.
AsymptoticFit fit_asymptotic_constants(const SystemParams& params, const QuadratureConfig& quad,
                                       int branch, double window_lo_s, double window_hi_s,
                                       int samples = 41);

}  // namespace aqd
