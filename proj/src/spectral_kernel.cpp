#include "aqd/spectral_kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "aqd/constants.hpp"

namespace aqd {

double dos_prefactor(double dimension) {
    if (!(dimension >= 1.0 && dimension <= 3.0)) {
        throw std::domain_error("dos_prefactor: dimension outside [1, 3]");
    }
    const double d = dimension;
    return d / (std::pow(2.0, d) * std::pow(constants::pi, 0.5 * d) * std::tgamma(0.5 * d + 1.0));
}

double form_factor_sq(double k, double sigma) {
    return std::exp(-0.5 * sigma * sigma * k * k);
}

double coth_stable(double x) {
    if (!(x > 0.0)) throw std::domain_error("coth_stable: argument must be positive");
    if (x < kSeriesThreshold) {
        const double x2 = x * x;
        return 1.0 / x + x / 3.0 - x * x2 / 45.0;
    }
    return 1.0 / std::tanh(x);
}

double x_coth_x(double x) {
    if (x < kSeriesThreshold) {
        const double x2 = x * x;
        return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
    }
    return x / std::tanh(x);
}

double sinc(double z) {
    const double az = std::abs(z);
    if (az < kSeriesThreshold) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

IntegrandContext IntegrandContext::make(const SystemParams& params, double t, double dos_scale) {
    params.validate();
    if (!(t >= 0.0)) throw std::domain_error("IntegrandContext: negative time");
    const double g = params.mass_kg * params.sound_speed_m_per_s * params.sound_speed_m_per_s *
                     std::pow(params.interparticle_distance_m, params.dimension);
    IntegrandContext ctx;
    ctx.dimension = params.dimension;
    ctx.temperature_K = params.temperature_K;
    ctx.time_s = t;
    ctx.sound_speed = params.sound_speed_m_per_s;
    ctx.dot_size = params.dot_size_m;
    ctx.prefactor = 0.5 * dos_scale * dos_prefactor(params.dimension) * params.kappa_over_g *
                    params.kappa_over_g * g;
    return ctx;
}

double integrand(const IntegrandContext& ctx, double k) {
    if (ctx.time_s == 0.0) return 0.0;
    const double c = ctx.sound_speed;
    const double t = ctx.time_s;
    const double half_phase = 0.5 * c * k * t;
    const double sinc2 = sinc(half_phase) * sinc(half_phase);

    // (1 - cos(ckt)) = (ckt)^2/2 * sinc^2(ckt/2); regrouped against 1/(hbar c k)
    // and coth so that nothing overflows or cancels as k -> 0.
    double thermal_oscillation;
    if (ctx.temperature_K == 0.0) {
        thermal_oscillation = c * k * t * t * sinc2 / (2.0 * constants::hbar);
    } else {
        const double x = constants::hbar * c * k / (2.0 * constants::k_B * ctx.temperature_K);
        thermal_oscillation = x_coth_x(x) * sinc2 * constants::k_B * ctx.temperature_K * t * t /
                              (constants::hbar * constants::hbar);
    }
    return ctx.prefactor * std::pow(k, ctx.dimension - 1.0) * form_factor_sq(k, ctx.dot_size) *
           thermal_oscillation;
}

}  // namespace aqd
