// sweep.hpp: batch sweeps over time, temperature and dimension, and their CSV form
//
// CSV layout (UTF-8, LF):
//   # key = value            metadata preamble, every input echoed
//   series,abscissa,gamma,coherence,gamma_abs_error,status[,extra columns]
// `series` indexes the curves described in the preamble ("# series.N = ...");
// `status` is "ok" or "nonconverged" (the row then carries the partial estimate).
// Numerals are shortest round-trip decimal.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aqd/dephasing.hpp"
#include "aqd/measurement.hpp"
#include "aqd/physical_system.hpp"

namespace aqd {

inline constexpr std::string_view kToolName = "aqd-dephasing";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class SweepKind { time, temperature, dimension, ramsey, validate };

std::string to_string(SweepKind kind);

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct SweepSpec {
    SweepKind kind{SweepKind::time};
    std::vector<double> abscissa_grid;   // s, K or dimensionless D depending on kind
    std::vector<double> fixed_times;     // s; temperature and dimension sweeps
    std::filesystem::path output_path;

    /// Grid non-empty and strictly increasing, kind-specific ranges. Throws ConfigError.
    void validate(const SystemParams& params) const;
};

struct CoherenceCurve {
    std::string label;
    std::vector<double> abscissa;
    std::vector<double> gamma;
    std::vector<double> coherence;
    std::vector<double> gamma_abs_error;
    std::vector<bool> converged;
    std::vector<std::pair<std::string, std::vector<double>>> extra_columns;

    std::size_t size() const { return abscissa.size(); }
    bool all_converged() const;
};

// Grid specs: "a,b,c", "lin:a:b:n" or "log:a:b:n". When sigma_over_c > 0 each
// number may carry a time unit suffix "sc", "sigma/c" or "σ/c" (multiples of sigma/c).
std::vector<double> parse_grid(std::string_view spec, double sigma_over_c = 0.0);
double parse_quantity(std::string_view token, double sigma_over_c = 0.0);

std::vector<double> linear_grid(double lo, double hi, std::size_t n);
std::vector<double> log_grid(double lo, double hi, std::size_t n);

// Default grids for the standard time, temperature and dimension sweeps.
std::vector<double> default_time_grid(const SystemParams& params);        // 60 log points, [1e-2, 10] sigma/c
std::vector<double> default_dimension_grid();                             // 1, 1.05, ..., 3
std::vector<double> default_temperature_grid();                           // 31 log points, [1e-9, 1e-6] K
std::vector<double> default_fixed_times(const SystemParams& params);       // {1, 2, 10} sigma/c

/// Evaluates fn(i) for i in [0, n) on up to `workers` threads; results in index order.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}))>;

CoherenceCurve run_time_sweep(const SystemParams& params, const QuadratureConfig& quad,
                              const std::vector<double>& times, std::size_t workers = 1);

/// One curve per fixed time, abscissa = D.
std::vector<CoherenceCurve> run_dimension_sweep(const SystemParams& params,
                                                const QuadratureConfig& quad,
                                                const std::vector<double>& dimensions,
                                                const std::vector<double>& fixed_times,
                                                std::size_t workers = 1);

/// One curve per fixed time, abscissa = T in K, dimension taken from params.
std::vector<CoherenceCurve> run_temperature_sweep(const SystemParams& params,
                                                  const QuadratureConfig& quad,
                                                  const std::vector<double>& temperatures,
                                                  const std::vector<double>& fixed_times,
                                                  std::size_t workers = 1);

/// Time sweep with Ramsey observables; rp.interaction_time_s is replaced by each tau.
/// Extra columns: ramsey_probability, effective_probability, visibility.
CoherenceCurve run_ramsey_sweep(const SystemParams& params, const QuadratureConfig& quad,
                                const std::vector<double>& taus, const RamseyParams& rp,
                                std::size_t workers = 1);

/// Parameter, quadrature and derived-quantity echo for the CSV preamble.
Metadata describe(const SystemParams& params, const QuadratureConfig& quad);

/// Shortest decimal string that parses back to the same double.
std::string format_real(double x);

void write_csv(std::ostream& out, const Metadata& metadata, const std::vector<CoherenceCurve>& curves);
std::string to_csv(const Metadata& metadata, const std::vector<CoherenceCurve>& curves);

}  // namespace aqd

#include "aqd/sweep_impl.hpp"
