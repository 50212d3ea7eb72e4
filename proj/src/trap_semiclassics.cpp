#include "aqd/trap_semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aqd/constants.hpp"
#include "aqd/errors.hpp"
#include "aqd/quadrature.hpp"
#include "aqd/spectral_kernel.hpp"

namespace aqd {

namespace {

// Surface area of the unit sphere in D dimensions.
double sphere_surface(double d) {
    return 2.0 * std::pow(constants::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double beta_function(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

// Omega_D^2 / (2 pi hbar c)^D, the factor shared by every phase-space result.
double phase_space_norm(const SystemParams& params) {
    const double d = params.dimension;
    const double omega_d = sphere_surface(d);
    return omega_d * omega_d /
           std::pow(2.0 * constants::pi * constants::hbar * params.sound_speed_m_per_s, d);
}

quadrature::Options tight() {
    quadrature::Options opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-300;
    return opts;
}

}  // namespace

TrapParams TrapParams::make(double omega, double radius_m, double mass_kg) {
    if (!(mass_kg > 0.0)) throw ConfigError("TrapParams: mass must be positive");
    TrapParams t{omega, radius_m, std::sqrt(constants::hbar / (mass_kg * omega))};
    t.validate();
    return t;
}

TrapParams TrapParams::with_fixed_density(double radius_m, double omega_times_radius,
                                          double mass_kg) {
    return make(omega_times_radius / radius_m, radius_m, mass_kg);
}

void TrapParams::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("TrapParams: omega must be positive");
    if (!(radius_m > 0.0) || !std::isfinite(radius_m)) throw ConfigError("TrapParams: R must be positive");
    if (!(a_omega_m > 0.0)) throw ConfigError("TrapParams: a_omega must be positive");
}

double classical_amplitude(const TrapParams& trap, const SystemParams& params, double eps) {
    return std::sqrt(2.0 * eps / params.mass_kg) / trap.omega;
}

double semiclassical_dos(const TrapParams& trap, const SystemParams& params, double eps) {
    trap.validate();
    params.validate();
    const double lower = 0.5 * constants::hbar * trap.omega;
    const double upper = constants::hbar * params.sound_speed_m_per_s / params.dot_size_m;
    if (!(eps > lower && eps < upper)) {
        std::ostringstream os;
        os << "semiclassical_dos: eps = " << eps << " J outside (hbar omega/2, hbar c/sigma) = ("
           << lower << ", " << upper << ")";
        throw std::out_of_range(os.str());
    }
    const double amplitude = classical_amplitude(trap, params, eps);
    if (!(amplitude < trap.radius_m)) {
        throw std::out_of_range("semiclassical_dos: classical amplitude reaches the condensate edge");
    }
    const double d = params.dimension;
    const double ratio_sq = (amplitude / trap.radius_m) * (amplitude / trap.radius_m);

    // r = L_eps sin(theta): eps - V = eps cos^2(theta), dr = L_eps cos(theta) d theta,
    // c(r)^-D = c^-D (1 - (L_eps/R)^2 sin^2 theta)^(-D/2).
    auto radial = [d, ratio_sq](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        return std::pow(s, d - 1.0) * std::pow(c, 2.0 * d - 1.0) *
               std::pow(1.0 - ratio_sq * s * s, -0.5 * d);
    };
    const auto pts = quadrature::uniform_breakpoints(0.0, 0.5 * constants::pi, 8);
    const auto r = quadrature::integrate(radial, pts, tight());
    return phase_space_norm(params) * std::pow(eps, d - 1.0) * std::pow(amplitude, d) * r.value;
}

double harmonic_dos_leading(const TrapParams& trap, const SystemParams& params, double eps) {
    const double d = params.dimension;
    const double amplitude = classical_amplitude(trap, params, eps);
    return phase_space_norm(params) * std::pow(eps, d - 1.0) * std::pow(amplitude, d) * 0.5 *
           beta_function(0.5 * d, d);
}

double semiclassical_dos_homogeneous(const SystemParams& params, double box_side_m, double eps) {
    params.validate();
    if (!(eps > 0.0) || !(box_side_m > 0.0)) {
        throw std::out_of_range("semiclassical_dos_homogeneous: eps and box side must be positive");
    }
    const double d = params.dimension;
    // Ball of the same volume as the box: Omega_D rho^D / D = L^D.
    const double rho = std::pow(d * std::pow(box_side_m, d) / sphere_surface(d), 1.0 / d);
    auto radial = [d](double r) { return std::pow(r, d - 1.0); };
    const auto pts = quadrature::uniform_breakpoints(0.0, rho, 4);
    const auto r = quadrature::integrate(radial, pts, tight());
    return phase_space_norm(params) * std::pow(eps, d - 1.0) * r.value;
}

double box_dos(const SystemParams& params, double box_side_m, double eps) {
    const double d = params.dimension;
    return dos_prefactor(d) * std::pow(box_side_m, d) * std::pow(eps, d - 1.0) /
           std::pow(constants::hbar * params.sound_speed_m_per_s, d);
}

std::vector<std::string> WindowReport::warnings() const {
    std::vector<std::string> out;
    if (!sigma_much_greater_than_xi) {
        std::ostringstream os;
        os << "sigma/xi = " << sigma_over_xi << " < " << kWindowFactor;
        out.push_back(os.str());
    }
    if (!a_omega_much_greater_than_sigma) {
        std::ostringstream os;
        os << "a_omega/sigma = " << a_omega_over_sigma << " < " << kWindowFactor;
        out.push_back(os.str());
    }
    return out;
}

WindowReport validity_window(const TrapParams& trap, const SystemParams& params) {
    trap.validate();
    params.validate();
    WindowReport w;
    w.healing_length_m = constants::hbar / (params.mass_kg * params.sound_speed_m_per_s);
    w.dot_size_m = params.dot_size_m;
    w.a_omega_m = trap.a_omega_m;
    w.sigma_over_xi = w.dot_size_m / w.healing_length_m;
    w.a_omega_over_sigma = w.a_omega_m / w.dot_size_m;
    w.sigma_much_greater_than_xi = w.sigma_over_xi >= kWindowFactor;
    w.a_omega_much_greater_than_sigma = w.a_omega_over_sigma >= kWindowFactor;
    return w;
}

TrapShapeEstimate gamma_trap_shape(const TrapParams& trap, const SystemParams& params,
                                   const QuadratureConfig& quad, double t) {
    quad.validate();
    TrapShapeEstimate out;
    out.window = validity_window(trap, params);
    if (!(t >= 0.0)) throw std::domain_error("gamma_trap_shape: negative time");
    if (t == 0.0) return out;

    const double d = params.dimension;
    const double hbar = constants::hbar;
    const double eps_sigma = hbar * params.sound_speed_m_per_s / params.dot_size_m;
    const double temperature = params.temperature_K;
    const double u_max = quad.k_max_factor;  // eps_max = k_max_factor * hbar c / sigma

    // u = eps / eps_sigma; `rest` is coth(eps/2k_BT)(1 - cos(eps t/hbar))/eps,
    // regrouped through x coth x and sinc so the u -> 0 end stays finite.
    const double phase_rate = eps_sigma * t / hbar;
    auto integrand_u = [=](double u) {
        const double s = sinc(0.5 * phase_rate * u);
        double rest;
        if (temperature == 0.0) {
            rest = 0.5 * phase_rate * phase_rate * u * s * s / eps_sigma;
        } else {
            const double x = u * eps_sigma / (2.0 * constants::k_B * temperature);
            rest = x_coth_x(x) * s * s * constants::k_B * temperature * t * t / (hbar * hbar);
        }
        return std::pow(u, d - 1.0) * std::exp(-0.5 * u * u) * rest;
    };

    const double periods = phase_rate * u_max / (2.0 * constants::pi);
    const auto panels = std::max<std::size_t>(
        16, static_cast<std::size_t>(std::ceil(periods * quad.oscillation_panels_per_period)));
    const auto pts = quadrature::uniform_breakpoints(0.0, u_max, panels);
    quadrature::Options opts;
    opts.rel_tol = quad.rel_tol;
    opts.abs_tol = 1e-300;
    opts.max_depth = quad.max_panel_depth;
    const auto r = quadrature::integrate(integrand_u, pts, opts);

    // Homogeneous calibration (S_D/2)(kappa^2/g)/(hbar c)^D; d eps eps^(D-1) gives eps_sigma^D.
    const double g = params.mass_kg * params.sound_speed_m_per_s * params.sound_speed_m_per_s *
                     std::pow(params.interparticle_distance_m, d);
    const double prefactor = 0.5 * dos_prefactor(d) * params.kappa_over_g * params.kappa_over_g * g;
    const double norm = prefactor / std::pow(hbar * params.sound_speed_m_per_s, d) *
                        std::pow(eps_sigma, d);
    out.value = norm * r.value;
    out.abs_error = norm * r.abs_error;
    if (!r.converged) {
        throw NonConvergence("gamma_trap_shape: quadrature did not converge", out.value,
                             out.abs_error);
    }
    return out;
}

}  // namespace aqd
