// validation.hpp: self-check suite behind `aqd validate`

#pragma once

#include <string>
#include <vector>

#include "aqd/dephasing.hpp"
#include "aqd/physical_system.hpp"

namespace aqd {

struct ValidationOptions {
    std::vector<int> dimensions{1, 2, 3};
    QuadratureConfig quad{};
    int route_samples{20};
    unsigned long long seed{20070101};
};

struct CheckResult {
    std::string name;
    bool passed{};
    double measured{};
    double threshold{};
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
    std::string to_json() const;
};

/// Runs, per requested dimension: lattice route equality (gamma vs phase variance),
/// quadrature vs mode sum, the long-time fits/plateau, the semiclassical DOS
/// scaling; plus the Ramsey visibility example. Dimension and temperature in
/// `params` are overridden per check where the check needs it.
ValidationReport run_validation(const SystemParams& params, const ValidationOptions& opts);

}  // namespace aqd
