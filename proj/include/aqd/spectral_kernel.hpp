// spectral_kernel.hpp: ingredients of the continuum dephasing integrand
//
//   gamma(t) = (S_D/2) (kappa^2/g) Int_0^inf dk k^(D-1) |f_k|^2
//              coth(hbar c k / 2 k_B T) (1 - cos(c k t)) / (hbar c k)
//
// with S_D = D / (2^D pi^(D/2) Gamma(D/2 + 1)) and |f_k|^2 = exp(-sigma^2 k^2 / 2).

#pragma once

#include "aqd/physical_system.hpp"

namespace aqd {

/// S_D. Throws std::domain_error outside D in [1, 3].
double dos_prefactor(double dimension);

/// |f_k|^2 for a Gaussian dot of size sigma.
double form_factor_sq(double k, double sigma);

/// coth(x) for x > 0; series 1/x + x/3 - x^3/45 below 1e-4.
/// Throws std::domain_error for x <= 0 (T = 0 callers use coth = 1 directly).
double coth_stable(double x);

/// x coth(x), finite at x = 0 (returns 1).
double x_coth_x(double x);

/// sin(z)/z, finite at z = 0.
double sinc(double z);

/// Below these arguments the small-argument series are used.
inline constexpr double kSeriesThreshold = 1e-4;

struct IntegrandContext {
    double dimension{};
    double temperature_K{};   // 0 selects the exact coth = 1 branch
    double time_s{};
    double sound_speed{};
    double dot_size{};
    double prefactor{};       // (S_D / 2) * (kappa/g)^2 * g

    /// dos_scale multiplies S_D; it exists only so validation can inject a fault.
    static IntegrandContext make(const SystemParams& params, double t, double dos_scale = 1.0);
};

/// Full integrand including the prefactor. Finite and >= 0 for every k >= 0;
/// at k = 0 returns the analytic limit (prefactor * k_B T t^2 / hbar^2 for D = 1,
/// zero otherwise or at T = 0).
double integrand(const IntegrandContext& ctx, double k);

}  // namespace aqd
