#include "aqd/mode_sum.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "aqd/constants.hpp"
#include "aqd/errors.hpp"
#include "aqd/quadrature.hpp"

namespace aqd {

namespace {

int integer_dimension(const SystemParams& params) {
    const double d = params.dimension;
    if (d != 1.0 && d != 2.0 && d != 3.0) {
        throw std::domain_error("mode sum: dimension must be 1, 2 or 3");
    }
    return static_cast<int>(d);
}

// Visits each nonzero lattice vector class as (|k|, multiplicity), in a fixed order.
using ModeVisitor = std::function<void(double k, double multiplicity)>;

struct Lattice {
    int dimension;
    double spacing;        // 2 pi / L
    long long n_max;       // largest |n_i|
    long long n2_max;      // largest |n|^2 kept
};

Lattice make_lattice(const SystemParams& params, const ModeSumConfig& cfg) {
    Lattice lat;
    lat.dimension = integer_dimension(params);
    lat.spacing = 2.0 * constants::pi / cfg.box_length_m;
    const double radius = cfg.k_cutoff / lat.spacing;
    lat.n_max = static_cast<long long>(std::floor(radius));
    lat.n2_max = static_cast<long long>(std::floor(radius * radius));
    return lat;
}

// Points with n1^2 + n2^2 <= r2_max for each n1 row: |n2| <= floor(sqrt(r2_max - n1^2)).
long long row_half_width(long long remaining) {
    auto w = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(remaining))));
    while (w * w > remaining) --w;
    while ((w + 1) * (w + 1) <= remaining) ++w;
    return w;
}

// r_D(s): number of integer vectors with |n|^2 = s, for s in [0, s_max].
std::vector<long long> shell_counts(int dimension, long long s_max) {
    std::vector<long long> r1(s_max + 1, 0);
    for (long long n = 0; n * n <= s_max; ++n) r1[n * n] += (n == 0 ? 1 : 2);
    std::vector<long long> acc = r1;
    for (int d = 2; d <= dimension; ++d) {
        std::vector<long long> next(s_max + 1, 0);
        for (long long n = 0; n * n <= s_max; ++n) {
            const long long weight = n == 0 ? 1 : 2;
            for (long long s = n * n; s <= s_max; ++s) next[s] += weight * acc[s - n * n];
        }
        acc = std::move(next);
    }
    return acc;
}

std::size_t lattice_point_count(const Lattice& lat, const ModeSumConfig& cfg) {
    // Nonzero points only.
    long long count = 0;
    if (lat.dimension == 1) {
        count = 2 * lat.n_max;
    } else if (lat.dimension == 2) {
        for (long long a = -lat.n_max; a <= lat.n_max; ++a) {
            if (a * a > lat.n2_max) continue;
            count += 2 * row_half_width(lat.n2_max - a * a) + 1;
        }
        count -= 1;
    } else {
        for (long long a = -lat.n_max; a <= lat.n_max; ++a) {
            for (long long b = -lat.n_max; b <= lat.n_max; ++b) {
                const long long used = a * a + b * b;
                if (used > lat.n2_max) continue;
                count += 2 * row_half_width(lat.n2_max - used) + 1;
            }
        }
        count -= 1;
    }
    (void)cfg;
    return static_cast<std::size_t>(count);
}

void visit_modes(const Lattice& lat, const ModeSumConfig& cfg, const ModeVisitor& visit) {
    const double dk = lat.spacing;
    if (lat.dimension == 1) {
        for (long long n = 1; n <= lat.n_max; ++n) visit(dk * static_cast<double>(n), 2.0);
        return;
    }
    if (cfg.strategy == LatticeStrategy::full_lattice) {
        if (lat.dimension == 2) {
            for (long long a = -lat.n_max; a <= lat.n_max; ++a) {
                if (a * a > lat.n2_max) continue;
                const long long w = row_half_width(lat.n2_max - a * a);
                for (long long b = -w; b <= w; ++b) {
                    const long long s = a * a + b * b;
                    if (s == 0) continue;
                    visit(dk * std::sqrt(static_cast<double>(s)), 1.0);
                }
            }
        } else {
            for (long long a = -lat.n_max; a <= lat.n_max; ++a) {
                for (long long b = -lat.n_max; b <= lat.n_max; ++b) {
                    const long long used = a * a + b * b;
                    if (used > lat.n2_max) continue;
                    const long long w = row_half_width(lat.n2_max - used);
                    for (long long c = -w; c <= w; ++c) {
                        const long long s = used + c * c;
                        if (s == 0) continue;
                        visit(dk * std::sqrt(static_cast<double>(s)), 1.0);
                    }
                }
            }
        }
        return;
    }

    const auto counts = shell_counts(lat.dimension, lat.n2_max);
    if (cfg.shell_width <= 0.0) {
        for (long long s = 1; s <= lat.n2_max; ++s) {
            if (counts[s] == 0) continue;
            visit(dk * std::sqrt(static_cast<double>(s)), static_cast<double>(counts[s]));
        }
        return;
    }
    // Binned shells: each bin evaluated once at its count-weighted mean |k|.
    std::map<long long, std::pair<double, double>> bins;  // bin -> (sum count*k, count)
    for (long long s = 1; s <= lat.n2_max; ++s) {
        if (counts[s] == 0) continue;
        const double k = dk * std::sqrt(static_cast<double>(s));
        auto& bin = bins[static_cast<long long>(std::floor(k / cfg.shell_width))];
        bin.first += static_cast<double>(counts[s]) * k;
        bin.second += static_cast<double>(counts[s]);
    }
    for (const auto& [index, bin] : bins) visit(bin.first / bin.second, bin.second);
}

struct Physics {
    double g;            // m c^2 l^D
    double kappa_sq;     // ((kappa/g) g)^2
    double volume;       // L^D
    double c;
    double sigma;
    double temperature;
};

Physics physics(const SystemParams& params, const ModeSumConfig& cfg, int dimension) {
    Physics ph;
    ph.g = params.mass_kg * params.sound_speed_m_per_s * params.sound_speed_m_per_s *
           std::pow(params.interparticle_distance_m, dimension);
    const double kappa = params.kappa_over_g * ph.g;
    ph.kappa_sq = kappa * kappa;
    ph.volume = std::pow(cfg.box_length_m, dimension);
    ph.c = params.sound_speed_m_per_s;
    ph.sigma = params.dot_size_m;
    ph.temperature = params.temperature_K;
    return ph;
}

double thermal_factor(const Physics& ph, double hbar_omega) {
    if (ph.temperature == 0.0) return 1.0;
    return 1.0 / std::tanh(hbar_omega / (2.0 * constants::k_B * ph.temperature));
}

double one_minus_cos(double phase) {
    const double s = std::sin(0.5 * phase);
    return 2.0 * s * s;
}

template <typename Summand, typename ZeroMode>
ModeSum run(const SystemParams& params, const ModeSumConfig& cfg, double t, Summand summand,
            ZeroMode zero_mode) {
    params.validate();
    cfg.validate(params);
    if (!(t >= 0.0)) throw std::domain_error("mode sum: negative time");
    const Lattice lat = make_lattice(params, cfg);
    const std::size_t modes = lattice_point_count(lat, cfg) + (cfg.include_zero_mode ? 1 : 0);
    if (modes > cfg.max_modes) {
        throw ModeBudgetExceeded("mode sum: " + std::to_string(modes) + " modes exceed budget " +
                                 std::to_string(cfg.max_modes));
    }
    const Physics ph = physics(params, cfg, lat.dimension);
    quadrature::CompensatedSum sum;
    if (cfg.include_zero_mode) sum.add(zero_mode(ph));
    visit_modes(lat, cfg, [&](double k, double multiplicity) { sum.add(multiplicity * summand(ph, k)); });
    return ModeSum{sum.value(), modes};
}

}  // namespace

ModeSumConfig ModeSumConfig::for_params(const SystemParams& params, double box_in_sigma,
                                        double cutoff_in_inv_sigma) {
    ModeSumConfig cfg;
    cfg.box_length_m = box_in_sigma * params.dot_size_m;
    cfg.k_cutoff = cutoff_in_inv_sigma / params.dot_size_m;
    cfg.strategy = params.dimension == 3.0 ? LatticeStrategy::radial_shells
                                           : LatticeStrategy::full_lattice;
    return cfg;
}

void ModeSumConfig::validate(const SystemParams& params) const {
    if (!(box_length_m > 0.0)) throw ConfigError("mode sum: box length must be positive");
    if (!(k_cutoff * params.dot_size_m >= 6.0 * (1.0 - 1e-12))) {
        throw ConfigError("mode sum: k_cutoff must be >= 6/sigma");
    }
    if (shell_width < 0.0) throw ConfigError("mode sum: shell_width must be >= 0");
    if (strategy == LatticeStrategy::radial_shells && params.dimension == 1.0 && shell_width > 0.0) {
        throw ConfigError("mode sum: shell binning needs D >= 2");
    }
}

std::size_t count_modes(const SystemParams& params, const ModeSumConfig& cfg) {
    cfg.validate(params);
    const Lattice lat = make_lattice(params, cfg);
    return lattice_point_count(lat, cfg) + (cfg.include_zero_mode ? 1 : 0);
}

ModeSum gamma_discrete(const SystemParams& params, const ModeSumConfig& cfg, double t) {
    if (t == 0.0) {
        return ModeSum{0.0, count_modes(params, cfg)};
    }
    auto summand = [t](const Physics& ph, double k) {
        const double omega = ph.c * k;
        const double hbar_omega = constants::hbar * omega;
        const double f_sq = std::exp(-0.5 * ph.sigma * ph.sigma * k * k);
        const double g_k_sq = ph.kappa_sq * hbar_omega * f_sq / (2.0 * ph.g * ph.volume);
        return g_k_sq * thermal_factor(ph, hbar_omega) * one_minus_cos(omega * t) /
               (hbar_omega * hbar_omega);
    };
    auto zero_mode = [t](const Physics& ph) {
        if (ph.temperature == 0.0) return 0.0;
        return ph.kappa_sq * constants::k_B * ph.temperature * t * t /
               (2.0 * ph.g * ph.volume * constants::hbar * constants::hbar);
    };
    return run(params, cfg, t, summand, zero_mode);
}

ModeSum phase_variance_discrete(const SystemParams& params, const ModeSumConfig& cfg, double t) {
    if (t == 0.0) {
        return ModeSum{0.0, count_modes(params, cfg)};
    }
    // a_k^{-2} = g / (hbar w_k), canonical 1/sqrt(2 L^D) field normalization.
    auto summand = [t](const Physics& ph, double k) {
        const double omega = ph.c * k;
        const double hbar_omega = constants::hbar * omega;
        const double inv_amplitude_sq = ph.g / hbar_omega;
        const double f_sq = std::exp(-0.5 * ph.sigma * ph.sigma * k * k);
        return inv_amplitude_sq / (2.0 * ph.volume) * f_sq * thermal_factor(ph, hbar_omega) * 2.0 *
               one_minus_cos(omega * t);
    };
    auto zero_mode = [t](const Physics& ph) {
        if (ph.temperature == 0.0) return 0.0;
        return ph.g * constants::k_B * ph.temperature * t * t /
               (ph.volume * constants::hbar * constants::hbar);
    };
    return run(params, cfg, t, summand, zero_mode);
}

double smoothed_correlation(const SystemParams& params, const ModeSumConfig& cfg, double t) {
    const double n0 = std::pow(params.interparticle_distance_m, -params.dimension);
    return n0 * std::exp(-0.5 * phase_variance_discrete(params, cfg, t).value);
}

}  // namespace aqd
