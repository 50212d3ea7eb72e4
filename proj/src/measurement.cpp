#include "aqd/measurement.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aqd/errors.hpp"

namespace aqd {

void RamseyParams::validate() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(detection_probability)) throw ConfigError("P_d must lie in [0, 1]");
    if (!in_unit(spurious_probability)) throw ConfigError("P_s must lie in [0, 1]");
    if (!(extrinsic_rate >= 0.0) || !std::isfinite(extrinsic_rate)) {
        throw ConfigError("gamma_d must be non-negative");
    }
    if (!(interaction_time_s >= 0.0) || !std::isfinite(interaction_time_s)) {
        throw ConfigError("tau must be non-negative");
    }
}

std::vector<std::string> RamseyParams::warnings() const {
    std::vector<std::string> out;
    if (extrinsic_dephasing() > kVisibilityLinearLimit) {
        std::ostringstream os;
        os << "gamma_d tau = " << extrinsic_dephasing()
           << " is not << 1; closed-form visibility is unreliable";
        out.push_back(os.str());
    }
    return out;
}

double ramsey_probability(double gamma) {
    if (!(gamma >= 0.0)) throw std::domain_error("ramsey_probability: gamma must be >= 0");
    return 0.5 * -std::expm1(-gamma);
}

double effective_probability(double gamma, const RamseyParams& rp) {
    rp.validate();
    if (!(gamma >= 0.0)) throw std::domain_error("effective_probability: gamma must be >= 0");
    return 0.5 * rp.detection_probability * -std::expm1(-gamma - rp.extrinsic_dephasing()) +
           rp.spurious_probability;
}

Visibility visibility(const RamseyParams& rp) {
    rp.validate();
    if (rp.detection_probability == 0.0) throw ConfigError("visibility: P_d must be > 0");
    const double x = rp.extrinsic_dephasing();
    const double ratio = rp.spurious_probability / rp.detection_probability;

    Visibility v;
    v.closed_form = (1.0 - x) / (1.0 + x + 4.0 * ratio);
    const double p_max = 0.5 * rp.detection_probability + rp.spurious_probability;
    const double p_min = 0.5 * rp.detection_probability * -std::expm1(-x) + rp.spurious_probability;
    v.exact = (p_max - p_min) / (p_max + p_min);
    v.discrepancy = std::abs(v.closed_form - v.exact);
    return v;
}

}  // namespace aqd
