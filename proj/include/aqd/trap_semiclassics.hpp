// trap_semiclassics.hpp: shallow-trap corrections: semiclassical phonon density
// of states for H(p, x) = c(x)|p| + V(x), the homogeneous-equivalence window
// xi << sigma << a_omega, and the energy-integral form of gamma(t)

#pragma once

#include <string>
#include <vector>

#include "aqd/dephasing.hpp"
#include "aqd/physical_system.hpp"

namespace aqd {

struct TrapParams {
    double omega{};       // loose-direction trap frequency, rad/s
    double radius_m{};    // condensate radius R
    double a_omega_m{};   // sqrt(hbar / (m omega))

    static TrapParams make(double omega, double radius_m, double mass_kg);

    /// Thermodynamic-limit family omega = omega_times_radius / R, which keeps
    /// the central density fixed as R grows.
    static TrapParams with_fixed_density(double radius_m, double omega_times_radius,
                                         double mass_kg);

    void validate() const;
};

/// Classical oscillation amplitude L_eps = sqrt(2 eps / (m omega^2)).
double classical_amplitude(const TrapParams& trap, const SystemParams& params, double eps);

/// g(eps) = (2 pi hbar)^-D Int d^Dx Int d^Dp delta(eps - c(x)|p| - V(x)),
/// c(x) = c sqrt(1 - x^2/R^2), V = m omega^2 x^2 / 2. The momentum shell is
/// done analytically; the radial integral numerically with r = L_eps sin(theta).
/// Throws std::out_of_range unless hbar omega/2 < eps < hbar c/sigma and L_eps < R.
double semiclassical_dos(const TrapParams& trap, const SystemParams& params, double eps);

/// Leading term of semiclassical_dos for L_eps/R -> 0:
/// Omega_D^2 eps^(D-1) L_eps^D B(D/2, D) / (2 (2 pi hbar c)^D).
double harmonic_dos_leading(const TrapParams& trap, const SystemParams& params, double eps);

/// Same phase-space integral for V = 0, constant c, over a ball with volume box_side^D.
double semiclassical_dos_homogeneous(const SystemParams& params, double box_side_m, double eps);

/// Closed-form box result S_D L^D eps^(D-1) / (hbar c)^D.
double box_dos(const SystemParams& params, double box_side_m, double eps);

/// Threshold for "much greater than" in the window report.
inline constexpr double kWindowFactor = 5.0;

struct WindowReport {
    double healing_length_m{};
    double dot_size_m{};
    double a_omega_m{};
    double sigma_over_xi{};
    double a_omega_over_sigma{};
    bool sigma_much_greater_than_xi{};
    bool a_omega_much_greater_than_sigma{};

    bool satisfied() const { return sigma_much_greater_than_xi && a_omega_much_greater_than_sigma; }
    std::vector<std::string> warnings() const;
};

WindowReport validity_window(const TrapParams& trap, const SystemParams& params);

struct TrapShapeEstimate {
    double value{};
    double abs_error{};
    WindowReport window;
};

/// The trap-corrected dephasing integral over phonon energies,
///   Int d eps eps^(D-1) |f_eps|^2 coth(eps / 2 k_B T) (1 - cos(eps t / hbar)) / eps,
/// |f_eps|^2 = exp(-sigma^2 eps^2 / (2 hbar^2 c^2)), normalized to the homogeneous
/// result. Inside the window the trap changes nothing but the window report.
TrapShapeEstimate gamma_trap_shape(const TrapParams& trap, const SystemParams& params,
                                   const QuadratureConfig& quad, double t);

}  // namespace aqd
