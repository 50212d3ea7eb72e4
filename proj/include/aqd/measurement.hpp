// measurement.hpp: Ramsey read-out of the dot: echo probability, imperfect
// detection and fringe visibility

#pragma once

#include <string>
#include <vector>

namespace aqd {

struct RamseyParams {
    double detection_probability{1.0};  // P_d
    double spurious_probability{0.0};   // P_s
    double extrinsic_rate{0.0};         // gamma_d, 1/s
    double interaction_time_s{0.0};     // tau

    void validate() const;  // throws ConfigError
    double extrinsic_dephasing() const { return extrinsic_rate * interaction_time_s; }
    /// Non-empty when gamma_d tau exceeds kVisibilityLinearLimit.
    std::vector<std::string> warnings() const;
};

inline constexpr double kVisibilityLinearLimit = 0.3;

/// P(|1>) = (1 - e^{-gamma}) / 2 after the echo sequence.
double ramsey_probability(double gamma);

/// P~(|1>) = P_d (1 - e^{-gamma - gamma_d tau}) / 2 + P_s.
double effective_probability(double gamma, const RamseyParams& rp);

struct Visibility {
    double closed_form{};  // (1 - gamma_d tau) / (1 + gamma_d tau + 4 P_s/P_d)
    double exact{};        // (P~max - P~min) / (P~max + P~min)
    double discrepancy{};  // |closed_form - exact|
};

/// P~max is P~ at gamma -> inf, P~min at gamma = 0 with gamma_d kept. The closed
/// form follows from the exact ratio by e^{-gamma_d tau} ~ 1 - gamma_d tau.
/// Throws ConfigError when P_d = 0.
Visibility visibility(const RamseyParams& rp);

}  // namespace aqd
