#include "aqd/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "aqd/constants.hpp"
#include "aqd/errors.hpp"
#include "aqd/measurement.hpp"
#include "aqd/mode_sum.hpp"
#include "aqd/trap_semiclassics.hpp"

namespace aqd {

namespace {

CheckResult route_equality(const SystemParams& base, const ValidationOptions& opts, int d) {
    const SystemParams params = base.with_dimension(d);
    const ModeSumConfig cfg = ModeSumConfig::for_params(params, 50.0);
    std::mt19937_64 rng(opts.seed + static_cast<unsigned long long>(d));
    std::uniform_real_distribution<double> time_dist(0.1, 20.0);
    std::uniform_real_distribution<double> temp_dist(0.0, 1e-6);
    double worst = 0.0;
    for (int i = 0; i < opts.route_samples; ++i) {
        const double t = time_dist(rng) * params.dephasing_time_s();
        const SystemParams p = params.with_temperature(temp_dist(rng));
        const double gamma = gamma_discrete(p, cfg, t).value;
        const double via_phase = 0.5 * p.kappa_over_g * p.kappa_over_g *
                                 phase_variance_discrete(p, cfg, t).value;
        worst = std::max(worst, std::abs(gamma - via_phase) / std::abs(gamma));
    }
    std::ostringstream os;
    os << opts.route_samples << " random (t, T) points, L = 50 sigma";
    return {"route_equality_D" + std::to_string(d), worst <= 1e-12, worst, 1e-12, os.str()};
}

CheckResult mode_sum_agreement(const SystemParams& base, const ValidationOptions& opts, int d) {
    const SystemParams params = base.with_dimension(d);
    double worst = 0.0;
    for (double tau : {0.1, 1.0, 10.0}) {
        const double t = tau * params.dephasing_time_s();
        const double box = std::max(100.0, 10.0 * tau);
        const ModeSumConfig cfg = ModeSumConfig::for_params(params, box);
        const double quad = gamma_of_t(params, opts.quad, t).value;
        const double sum = gamma_discrete(params, cfg, t).value;
        worst = std::max(worst, std::abs(quad - sum) / quad);
    }
    return {"quadrature_vs_mode_sum_D" + std::to_string(d), worst <= 0.01, worst, 0.01,
            "t in {0.1, 1, 10} sigma/c, L = max(100 sigma, 10 c t)"};
}

CheckResult asymptotics(const SystemParams& base, const ValidationOptions& opts, int d) {
    const SystemParams params = base.with_dimension(d);
    const double tc = params.dephasing_time_s();
    const std::string name = "asymptotic_D" + std::to_string(d);
    if (d == 3) {
        const double quad = coherence_of_t(params, opts.quad, 50.0 * tc);
        const double plateau = asymptotic_coherence(params, 3, 50.0 * tc).coherence;
        const double rel = std::abs(quad - plateau) / plateau;
        return {name, rel <= 0.01, rel, 0.01, "coherence at 50 sigma/c vs closed-form plateau"};
    }
    const double limit = d == 1 ? kFitResidualLimit1d : kFitResidualLimit2d;
    try {
        const AsymptoticFit fit = fit_asymptotic_constants(params, opts.quad, d, 10.0 * tc, 50.0 * tc);
        std::ostringstream os;
        os << "window [10, 50] sigma/c, constant " << fit.constant;
        return {name, true, fit.fit_residual, limit, os.str()};
    } catch (const FitError& e) {
        return {name, false, e.fit().fit_residual, limit, e.what()};
    }
}

CheckResult dos_scaling(const SystemParams& base, int d) {
    const SystemParams params = base.with_dimension(d);
    const double c = params.sound_speed_m_per_s;
    const double sigma = params.dot_size_m;
    const double omega = std::min(2.0 * constants::pi, c / (20.0 * sigma));
    const double a_omega = std::sqrt(constants::hbar / (params.mass_kg * omega));
    const TrapParams trap = TrapParams::make(omega, 500.0 * a_omega, params.mass_kg);

    // Least-squares slope of log g vs log eps over [hbar omega, 10 hbar omega].
    const int n = 21;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double eps = constants::hbar * omega * std::pow(10.0, static_cast<double>(i) / (n - 1));
        const double x = std::log(eps);
        const double y = std::log(semiclassical_dos(trap, params, eps));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double expected = 1.5 * d - 1.0;

    const double eps = 0.5 * constants::hbar * c / sigma;
    const double box = 100.0 * sigma;
    const double box_rel = std::abs(semiclassical_dos_homogeneous(params, box, eps) /
                                        box_dos(params, box, eps) - 1.0);
    const double dev = std::abs(slope - expected);
    std::ostringstream os;
    os << "slope " << slope << " vs " << expected << ", box cross-check rel " << box_rel;
    return {"dos_scaling_D" + std::to_string(d), dev <= 0.02 && box_rel <= 0.01, dev, 0.02, os.str()};
}

CheckResult visibility_example() {
    RamseyParams rp;
    rp.detection_probability = 0.8;
    rp.spurious_probability = 0.04;
    rp.extrinsic_rate = 10.0;
    rp.interaction_time_s = 10e-3;
    const double v = visibility(rp).closed_form;
    const double dev = std::abs(v - 0.6923);
    std::ostringstream os;
    os << "gamma_d = 10/s, tau = 10 ms, P_s/P_d = 0.05: V = " << v << ", expected 0.6923";
    return {"visibility_example", dev <= 1e-4, dev, 1e-4, os.str()};
}

}  // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["passed"] = passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"measured", c.measured},
                               {"threshold", c.threshold},
                               {"detail", c.detail}});
    }
    return j.dump(2);
}

ValidationReport run_validation(const SystemParams& params, const ValidationOptions& opts) {
    params.validate();
    opts.quad.validate();
    for (int d : opts.dimensions) {
        if (d < 1 || d > 3) throw ConfigError("validate: dimensions must be 1, 2 or 3");
    }
    ValidationReport report;
    for (int d : opts.dimensions) {
        report.checks.push_back(route_equality(params, opts, d));
        report.checks.push_back(mode_sum_agreement(params, opts, d));
        report.checks.push_back(asymptotics(params, opts, d));
        report.checks.push_back(dos_scaling(params, d));
    }
    report.checks.push_back(visibility_example());
    return report;
}

}  // namespace aqd
