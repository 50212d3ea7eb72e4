// physical_system.hpp: condensate + impurity parameters and derived scales

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace aqd {

/// All physical inputs in SI units. The coupling enters only as kappa/g.
struct SystemParams {
    double mass_kg{1e-25};
    double interparticle_distance_m{5e-7};
    double sound_speed_m_per_s{1e-3};
    double temperature_K{2e-7};
    double dot_size_m{1e-6};     // sigma, AQD ground-state size in the loose directions
    double kappa_over_g{1.0};
    double dimension{1.0};       // effective D, real in [1, 3]

    /// Throws ConfigError if an invariant is violated.
    void validate() const;

    /// sigma / c, the time a phonon needs to cross the dot.
    double dephasing_time_s() const { return dot_size_m / sound_speed_m_per_s; }

    /// Copy with a different effective dimension / temperature.
    SystemParams with_dimension(double d) const;
    SystemParams with_temperature(double t_K) const;
    SystemParams with_kappa_over_g(double r) const;
};

/// Reference parameter set: m = 1e-25 kg, l = 5e-7 m, c = 1e-3 m/s,
/// T = 2e-7 K, sigma = 1e-6 m, kappa = g.
SystemParams reference_params(double dimension = 1.0);

enum class ThermalRegime { zero_temperature, low_temperature, high_temperature };

std::string to_string(ThermalRegime r);

struct DerivedQuantities {
    double density{};            // n0 = l^-D  (m^-D)
    double interaction{};        // g = m c^2 / n0  (J m^D)
    double healing_length_m{};   // xi = hbar / (m c)
    double dephasing_time_s{};   // sigma / c
    double crossover_temperature_K{};  // hbar c / (sigma k_B)
    ThermalRegime regime{ThermalRegime::high_temperature};
    std::vector<std::string> regime_flags;
};

/// Soft-assumption thresholds: sigma/l and sigma/xi below this are flagged.
inline constexpr double kMuchGreaterFactor = 5.0;
/// k_B T > factor * hbar c / sigma counts as the high-temperature regime.
inline constexpr double kHighTemperatureFactor = 10.0;

DerivedQuantities derive(const SystemParams& params);

ThermalRegime thermal_regime(const SystemParams& params);

// Config file: "key = value" lines, '#' comments, SI units.
// Keys: mass_kg, interparticle_distance_m, sound_speed_m_per_s, temperature_K,
// dot_size_m, kappa_over_g (default 1), dimension (default 1).
SystemParams parse_config(std::istream& in);
SystemParams load_config(const std::filesystem::path& path);

}  // namespace aqd
