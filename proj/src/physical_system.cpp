#include "aqd/physical_system.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>

#include "aqd/constants.hpp"
#include "aqd/errors.hpp"

namespace aqd {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& text, int line) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (!text.empty() && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                          "' is not a real number: '" + text + "'");
    }
    return value;
}

}  // namespace

void SystemParams::validate() const {
    require(std::isfinite(mass_kg) && mass_kg > 0, "mass_kg must be positive");
    require(std::isfinite(interparticle_distance_m) && interparticle_distance_m > 0,
            "interparticle_distance_m must be positive");
    require(std::isfinite(sound_speed_m_per_s) && sound_speed_m_per_s > 0,
            "sound_speed_m_per_s must be positive");
    require(std::isfinite(dot_size_m) && dot_size_m > 0, "dot_size_m must be positive");
    require(std::isfinite(temperature_K) && temperature_K >= 0,
            "temperature_K must be non-negative");
    require(std::isfinite(kappa_over_g), "kappa_over_g must be finite");
    require(std::isfinite(dimension) && dimension >= 1.0 && dimension <= 3.0,
            "dimension must lie in [1, 3]");
}

SystemParams SystemParams::with_dimension(double d) const {
    SystemParams p = *this;
    p.dimension = d;
    return p;
}

SystemParams SystemParams::with_temperature(double t_K) const {
    SystemParams p = *this;
    p.temperature_K = t_K;
    return p;
}

SystemParams SystemParams::with_kappa_over_g(double r) const {
    SystemParams p = *this;
    p.kappa_over_g = r;
    return p;
}

SystemParams reference_params(double dimension) {
    SystemParams p;
    p.dimension = dimension;
    return p;
}

std::string to_string(ThermalRegime r) {
    switch (r) {
        case ThermalRegime::zero_temperature: return "zero-T";
        case ThermalRegime::low_temperature: return "low-T";
        case ThermalRegime::high_temperature: return "high-T";
    }
    return "unknown";
}

ThermalRegime thermal_regime(const SystemParams& params) {
    params.validate();
    if (params.temperature_K == 0.0) return ThermalRegime::zero_temperature;
    const double crossover =
        constants::hbar * params.sound_speed_m_per_s / (params.dot_size_m * constants::k_B);
    return params.temperature_K > kHighTemperatureFactor * crossover
               ? ThermalRegime::high_temperature
               : ThermalRegime::low_temperature;
}

DerivedQuantities derive(const SystemParams& params) {
    params.validate();
    const double m = params.mass_kg;
    const double c = params.sound_speed_m_per_s;
    const double l = params.interparticle_distance_m;
    const double sigma = params.dot_size_m;

    DerivedQuantities d;
    d.density = std::pow(l, -params.dimension);
    d.interaction = m * c * c * std::pow(l, params.dimension);
    d.healing_length_m = constants::hbar / (m * c);
    d.dephasing_time_s = sigma / c;
    d.crossover_temperature_K = constants::hbar * c / (sigma * constants::k_B);
    d.regime = thermal_regime(params);

    // Warnings only; none of these change a number downstream.
    if (sigma / l < kMuchGreaterFactor) {
        std::ostringstream os;
        os << "sigma/l = " << sigma / l << " < " << kMuchGreaterFactor
           << ": phase-density representation needs sigma >> l";
        d.regime_flags.push_back(os.str());
    }
    if (sigma / d.healing_length_m < kMuchGreaterFactor) {
        std::ostringstream os;
        os << "sigma/xi = " << sigma / d.healing_length_m << " < " << kMuchGreaterFactor
           << ": cutoff k ~ 1/sigma may leave the phonon regime";
        d.regime_flags.push_back(os.str());
    }
    if (d.regime == ThermalRegime::high_temperature) {
        d.regime_flags.push_back("high-T: k_B T >> hbar c / sigma");
    }
    return d;
}

SystemParams parse_config(std::istream& in) {
    static const char* const kKeys[] = {"mass_kg",        "interparticle_distance_m",
                                        "sound_speed_m_per_s", "temperature_K",
                                        "dot_size_m",     "kappa_over_g",
                                        "dimension"};
    std::map<std::string, double> values;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        bool known = false;
        for (const char* k : kKeys) known = known || key == k;
        if (!known) {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (values.count(key)) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        values[key] = parse_real(key, value, line_no);
    }

    auto required = [&](const char* key) {
        const auto it = values.find(key);
        if (it == values.end()) throw ConfigError(std::string("missing key '") + key + "'");
        return it->second;
    };
    auto optional = [&](const char* key, double fallback) {
        const auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    };

    SystemParams p;
    p.mass_kg = required("mass_kg");
    p.interparticle_distance_m = required("interparticle_distance_m");
    p.sound_speed_m_per_s = required("sound_speed_m_per_s");
    p.temperature_K = required("temperature_K");
    p.dot_size_m = required("dot_size_m");
    p.kappa_over_g = optional("kappa_over_g", 1.0);
    p.dimension = optional("dimension", 1.0);
    p.validate();
    return p;
}

SystemParams load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    return parse_config(in);
}

}  // namespace aqd
