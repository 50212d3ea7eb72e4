#include "aqd/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "aqd/constants.hpp"
#include "aqd/errors.hpp"
#include "aqd/quadrature.hpp"
#include "aqd/spectral_kernel.hpp"

namespace aqd {

namespace {

constexpr std::size_t kMinPanels = 16;

// Bound on Int_K^inf of the integrand using coth(x(k)) <= coth(x(K)),
// (1 - cos) <= 2 and k^(D-2) <= K^(D-3) k for k >= K.
double tail_bound(const IntegrandContext& ctx, double k_max) {
    const double a = 0.5 * ctx.dot_size * ctx.dot_size;
    const double coth_max =
        ctx.temperature_K == 0.0
            ? 1.0
            : coth_stable(constants::hbar * ctx.sound_speed * k_max /
                          (2.0 * constants::k_B * ctx.temperature_K));
    const double gaussian_moment = std::pow(k_max, ctx.dimension - 3.0) * std::exp(-a * k_max * k_max) / (2.0 * a);
    return ctx.prefactor * coth_max * 2.0 / (constants::hbar * ctx.sound_speed) * gaussian_moment;
}

double density(const SystemParams& params, int dimension) {
    return std::pow(params.interparticle_distance_m, -static_cast<double>(dimension));
}

double thermal_coupling(const SystemParams& params) {
    return params.kappa_over_g * params.kappa_over_g * params.mass_kg * constants::k_B *
           params.temperature_K / (constants::hbar * constants::hbar);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(k_max_factor >= 6.0)) throw ConfigError("k_max_factor must be >= 6");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("tolerances must be positive");
    if (max_panel_depth < 1) throw ConfigError("max_panel_depth must be >= 1");
    if (oscillation_panels_per_period < 1) {
        throw ConfigError("oscillation_panels_per_period must be >= 1");
    }
    if (!(dos_prefactor_scale > 0.0)) throw ConfigError("dos_prefactor_scale must be positive");
}

GammaEstimate gamma_of_t(const SystemParams& params, const QuadratureConfig& quad, double t) {
    quad.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error("gamma_of_t: negative time");
    if (t == 0.0) return {};

    const IntegrandContext ctx = IntegrandContext::make(params, t, quad.dos_prefactor_scale);
    const double k_max = quad.k_max_factor / params.dot_size_m;
    const double periods = params.sound_speed_m_per_s * t * k_max / (2.0 * constants::pi);
    const auto panels = std::max<std::size_t>(
        kMinPanels,
        static_cast<std::size_t>(std::ceil(periods * quad.oscillation_panels_per_period)));
    const auto breakpoints = quadrature::uniform_breakpoints(0.0, k_max, panels);

    quadrature::Options opts;
    opts.rel_tol = quad.rel_tol;
    opts.abs_tol = quad.abs_tol;
    opts.max_depth = quad.max_panel_depth;
    const auto result =
        quadrature::integrate([&ctx](double k) { return integrand(ctx, k); }, breakpoints, opts);

    const GammaEstimate estimate{result.value, result.abs_error + tail_bound(ctx, k_max)};
    if (!result.converged) {
        std::ostringstream os;
        os << "gamma_of_t: quadrature did not converge at t = " << t << " s (estimate "
           << estimate.value << " +/- " << estimate.abs_error << ")";
        throw NonConvergence(os.str(), estimate.value, estimate.abs_error);
    }
    return estimate;
}

double coherence_of_t(const SystemParams& params, const QuadratureConfig& quad, double t) {
    return std::exp(-gamma_of_t(params, quad, t).value);
}

GammaEstimate gamma_zero_temperature(const SystemParams& params, const QuadratureConfig& quad,
                                     double t) {
    return gamma_of_t(params.with_temperature(0.0), quad, t);
}

double decay_rate_1d(const SystemParams& params) {
    return thermal_coupling(params) * params.sound_speed_m_per_s / (2.0 * density(params, 1));
}

double power_law_exponent_2d(const SystemParams& params) {
    return thermal_coupling(params) / (2.0 * constants::pi * density(params, 2));
}

double plateau_exponent_3d(const SystemParams& params) {
    return thermal_coupling(params) /
           (std::pow(2.0 * constants::pi, 1.5) * density(params, 3) * params.dot_size_m);
}

AsymptoticValue asymptotic_coherence(const SystemParams& params, int branch, double t,
                                     const std::optional<AsymptoticFit>& fit) {
    params.validate();
    if (branch < 1 || branch > 3) throw std::domain_error("asymptotic_coherence: branch must be 1, 2 or 3");
    if (!(t > params.dephasing_time_s())) {
        throw std::domain_error("asymptotic_coherence: requires t > sigma/c");
    }
    if (fit && fit->dimension_branch != branch) {
        throw std::invalid_argument("asymptotic_coherence: fit belongs to a different branch");
    }
    AsymptoticValue v;
    v.constant_fitted = fit.has_value() && branch != 3;
    v.constant = (fit && branch != 3) ? fit->constant : 1.0;
    switch (branch) {
        case 1:
            v.coherence = v.constant * std::exp(-decay_rate_1d(params) * t);
            break;
        case 2:
            v.coherence = v.constant * std::pow(params.dephasing_time_s() / t,
                                                power_law_exponent_2d(params));
            break;
        default:
            v.coherence = std::exp(-plateau_exponent_3d(params));
            break;
    }
    return v;
}

AsymptoticFit fit_asymptotic_constants(const SystemParams& params, const QuadratureConfig& quad,
                                       int branch, double window_lo_s, double window_hi_s,
                                       int samples) {
    if (branch != 1 && branch != 2) {
        throw std::domain_error("fit_asymptotic_constants: only branches 1 and 2 have a constant");
    }
    const double tc = params.dephasing_time_s();
    constexpr double slack = 1e-12;
    if (!(window_lo_s < window_hi_s) || window_lo_s < 5.0 * tc * (1 - slack) ||
        window_hi_s > 100.0 * tc * (1 + slack)) {
        throw std::domain_error("fit_asymptotic_constants: window must lie in [5, 100] sigma/c");
    }
    if (samples < 20) throw std::domain_error("fit_asymptotic_constants: need >= 20 samples");

    const SystemParams p = params.with_dimension(branch);
    const double slope = branch == 1 ? decay_rate_1d(p) : power_law_exponent_2d(p);

    // log e^{-gamma} = log C - slope * s, with s = t (1D) or log(c t / sigma) (2D)
    std::vector<double> abscissa(samples);
    std::vector<double> offsets(samples);
    for (int i = 0; i < samples; ++i) {
        const double u = static_cast<double>(i) / (samples - 1);
        const double t = branch == 1 ? window_lo_s + u * (window_hi_s - window_lo_s)
                                     : window_lo_s * std::pow(window_hi_s / window_lo_s, u);
        abscissa[i] = branch == 1 ? t : std::log(t / tc);
        offsets[i] = -gamma_of_t(p, quad, t).value + slope * abscissa[i];
    }
    const double log_constant = quadrature::compensated_sum(offsets) / samples;
    double residual = 0.0;
    for (double o : offsets) residual = std::max(residual, std::abs(o - log_constant));

    AsymptoticFit fit;
    fit.dimension_branch = branch;
    fit.rate_or_exponent = slope;
    fit.constant = std::exp(log_constant);
    fit.window_lo_s = window_lo_s;
    fit.window_hi_s = window_hi_s;
    fit.fit_residual = residual;
    fit.samples = samples;

    const double limit = branch == 1 ? kFitResidualLimit1d : kFitResidualLimit2d;
    if (residual > limit) {
        std::ostringstream os;
        os << "fit_asymptotic_constants: D=" << branch << " residual " << residual
           << " exceeds " << limit << "; quadrature disagrees with the long-time form";
        throw FitError(os.str(), fit);
    }
    return fit;
}

}  // namespace aqd
