// mode_sum.hpp: finite-box lattice sums for gamma(t) and the coarse-grained
// phase variance; brute-force oracle for the continuum quadrature

#pragma once

#include <cstddef>
#include <stdexcept>

#include "aqd/physical_system.hpp"

namespace aqd {

enum class LatticeStrategy {
    full_lattice,   // every lattice vector visited individually
    radial_shells,  // exact lattice-point counts per |n|^2 (D = 2, 3)
};

struct ModeSumConfig {
    double box_length_m{};
    double k_cutoff{};                 // 1/m, must be >= 6/sigma
    LatticeStrategy strategy{LatticeStrategy::full_lattice};
    double shell_width{0.0};           // 1/m; 0 keeps every distinct shell exact
    bool include_zero_mode{true};      // k = 0 enters through its analytic limit
    std::size_t max_modes{200'000'000};

    /// Box of box_in_sigma * sigma, cutoff cutoff_in_inv_sigma / sigma, strategy
    /// chosen by dimension (shells for D = 3).
    static ModeSumConfig for_params(const SystemParams& params, double box_in_sigma,
                                    double cutoff_in_inv_sigma = 8.0);

    void validate(const SystemParams& params) const;
};

class ModeBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModeSum {
    double value{};
    std::size_t mode_count{};  // lattice points summed, zero mode included if enabled
};

/// gamma(t) = sum_k |g_k|^2 coth(hbar w_k / 2 k_B T) (1 - cos w_k t) / (hbar w_k)^2
/// with |g_k|^2 = kappa^2 hbar w_k |f_k|^2 / (2 g L^D). Integer D only.
ModeSum gamma_discrete(const SystemParams& params, const ModeSumConfig& cfg, double t);

/// <(delta phi_bar)^2(t)> = sum_k (g / (2 L^D hbar w_k)) |f_k|^2 coth(...) 2 (1 - cos w_k t).
/// gamma = (kappa/g)^2 / 2 times this value, mode by mode.
ModeSum phase_variance_discrete(const SystemParams& params, const ModeSumConfig& cfg, double t);

/// Number of modes the configuration visits, without evaluating anything.
std::size_t count_modes(const SystemParams& params, const ModeSumConfig& cfg);

/// n0 e^{-<(delta phi_bar)^2>/2}: the dot-smoothed temporal correlation
/// <Psi^dag(x0, t) Psi(x0, 0)>, equal to n0 e^{-gamma} when kappa = g.
double smoothed_correlation(const SystemParams& params, const ModeSumConfig& cfg, double t);

}  // namespace aqd
