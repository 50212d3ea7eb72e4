#include "aqd/sweep.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <system_error>

#include "aqd/errors.hpp"

namespace aqd {

namespace {

constexpr double kMaxTimeInSigmaOverC = 100.0;

struct Point {
    double gamma;
    double error;
    bool converged;
};

Point evaluate_point(const SystemParams& params, const QuadratureConfig& quad, double t) {
    try {
        const GammaEstimate g = gamma_of_t(params, quad, t);
        return Point{g.value, g.abs_error, true};
    } catch (const NonConvergence& e) {
        return Point{e.partial_estimate(), e.error_bound(), false};
    }
}

CoherenceCurve to_curve(std::string label, const std::vector<double>& abscissa,
                        const std::vector<Point>& points) {
    CoherenceCurve c;
    c.label = std::move(label);
    c.abscissa = abscissa;
    for (const Point& p : points) {
        c.gamma.push_back(p.gamma);
        c.coherence.push_back(std::exp(-p.gamma));
        c.gamma_abs_error.push_back(p.error);
        c.converged.push_back(p.converged);
    }
    return c;
}

void check_increasing(const std::vector<double>& grid, const char* what) {
    if (grid.empty()) throw ConfigError(std::string(what) + " grid is empty");
    for (double x : grid) {
        if (!std::isfinite(x)) throw ConfigError(std::string(what) + " grid has a non-finite value");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw ConfigError(std::string(what) + " grid must be strictly increasing");
        }
    }
}

void check_times(const std::vector<double>& times, const SystemParams& params, const char* what) {
    const double t_max = kMaxTimeInSigmaOverC * params.dephasing_time_s() * (1.0 + 1e-12);
    for (double t : times) {
        if (!(t >= 0.0) || t > t_max) {
            throw ConfigError(std::string(what) + " must lie in [0, 100] sigma/c");
        }
    }
}

std::string time_label(double t, const SystemParams& params) {
    return "tau_s=" + format_real(t) + " (" + format_real(t / params.dephasing_time_s()) +
           " sigma/c)";
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::time: return "time";
        case SweepKind::temperature: return "temperature";
        case SweepKind::dimension: return "dimension";
        case SweepKind::ramsey: return "ramsey";
        case SweepKind::validate: return "validate";
    }
    return "unknown";
}

bool CoherenceCurve::all_converged() const {
    for (bool ok : converged) {
        if (!ok) return false;
    }
    return true;
}

void SweepSpec::validate(const SystemParams& params) const {
    if (kind == SweepKind::validate) return;
    check_increasing(abscissa_grid, "abscissa");
    switch (kind) {
        case SweepKind::time:
        case SweepKind::ramsey:
            check_times(abscissa_grid, params, "times");
            break;
        case SweepKind::temperature:
            for (double t : abscissa_grid) {
                if (t < 0.0) throw ConfigError("temperatures must be >= 0 K");
            }
            break;
        case SweepKind::dimension:
            for (double d : abscissa_grid) {
                if (d < 1.0 || d > 3.0) throw ConfigError("dimensions must lie in [1, 3]");
            }
            break;
        default:
            break;
    }
    if (kind == SweepKind::temperature || kind == SweepKind::dimension) {
        if (fixed_times.empty()) throw ConfigError("fixed times are required");
        check_times(fixed_times, params, "fixed times");
    }
}

double parse_quantity(std::string_view token, double sigma_over_c) {
    token = strip(token);
    double scale = 1.0;
    for (std::string_view suffix : {"sigma/c", "σ/c", "sc"}) {
        if (token.size() > suffix.size() && token.ends_with(suffix)) {
            if (!(sigma_over_c > 0.0)) {
                throw ConfigError("unit suffix '" + std::string(suffix) + "' not allowed here");
            }
            token.remove_suffix(suffix.size());
            token = strip(token);
            scale = sigma_over_c;
            break;
        }
    }
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
        throw ConfigError("not a number: '" + std::string(token) + "'");
    }
    return value * scale;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n == 0) throw ConfigError("grid needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    g.back() = hi;
    return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw ConfigError("log grid bounds must be positive");
    if (n == 0) throw ConfigError("grid needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> g(n);
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> parse_grid(std::string_view spec, double sigma_over_c) {
    spec = strip(spec);
    const bool is_lin = spec.starts_with("lin:");
    const bool is_log = spec.starts_with("log:");
    if (is_lin || is_log) {
        std::vector<std::string_view> parts;
        std::string_view rest = spec.substr(4);
        for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos;) {
            parts.push_back(rest.substr(0, pos));
            rest.remove_prefix(pos + 1);
        }
        parts.push_back(rest);
        if (parts.size() != 3) throw ConfigError("grid spec must be lin:a:b:n or log:a:b:n");
        const double lo = parse_quantity(parts[0], sigma_over_c);
        const double hi = parse_quantity(parts[1], sigma_over_c);
        const double n = parse_quantity(parts[2]);
        if (n < 1 || n != std::floor(n) || n > 1e7) throw ConfigError("grid point count must be a positive integer");
        const auto count = static_cast<std::size_t>(n);
        return is_lin ? linear_grid(lo, hi, count) : log_grid(lo, hi, count);
    }
    std::vector<double> values;
    std::string_view rest = spec;
    while (true) {
        const auto pos = rest.find(',');
        values.push_back(parse_quantity(rest.substr(0, pos), sigma_over_c));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return values;
}

std::vector<double> default_time_grid(const SystemParams& params) {
    const double tc = params.dephasing_time_s();
    return log_grid(1e-2 * tc, 10.0 * tc, 60);
}

std::vector<double> default_dimension_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 40; ++i) g.push_back(1.0 + 0.05 * i);
    g.back() = 3.0;
    return g;
}

std::vector<double> default_temperature_grid() { return log_grid(1e-9, 1e-6, 31); }

std::vector<double> default_fixed_times(const SystemParams& params) {
    const double tc = params.dephasing_time_s();
    return {tc, 2.0 * tc, 10.0 * tc};
}

CoherenceCurve run_time_sweep(const SystemParams& params, const QuadratureConfig& quad,
                              const std::vector<double>& times, std::size_t workers) {
    params.validate();
    quad.validate();
    SweepSpec{SweepKind::time, times, {}, {}}.validate(params);
    const auto points = parallel_map(times.size(), workers,
                                     [&](std::size_t i) { return evaluate_point(params, quad, times[i]); });
    return to_curve("dimension=" + format_real(params.dimension), times, points);
}

std::vector<CoherenceCurve> run_dimension_sweep(const SystemParams& params,
                                                const QuadratureConfig& quad,
                                                const std::vector<double>& dimensions,
                                                const std::vector<double>& fixed_times,
                                                std::size_t workers) {
    params.validate();
    quad.validate();
    SweepSpec{SweepKind::dimension, dimensions, fixed_times, {}}.validate(params);
    const std::size_t nd = dimensions.size();
    const auto points = parallel_map(nd * fixed_times.size(), workers, [&](std::size_t i) {
        return evaluate_point(params.with_dimension(dimensions[i % nd]), quad, fixed_times[i / nd]);
    });
    std::vector<CoherenceCurve> curves;
    for (std::size_t j = 0; j < fixed_times.size(); ++j) {
        std::vector<Point> slice(points.begin() + j * nd, points.begin() + (j + 1) * nd);
        curves.push_back(to_curve(time_label(fixed_times[j], params), dimensions, slice));
    }
    return curves;
}

std::vector<CoherenceCurve> run_temperature_sweep(const SystemParams& params,
                                                  const QuadratureConfig& quad,
                                                  const std::vector<double>& temperatures,
                                                  const std::vector<double>& fixed_times,
                                                  std::size_t workers) {
    params.validate();
    quad.validate();
    SweepSpec{SweepKind::temperature, temperatures, fixed_times, {}}.validate(params);
    const std::size_t nt = temperatures.size();
    const auto points = parallel_map(nt * fixed_times.size(), workers, [&](std::size_t i) {
        return evaluate_point(params.with_temperature(temperatures[i % nt]), quad, fixed_times[i / nt]);
    });
    std::vector<CoherenceCurve> curves;
    for (std::size_t j = 0; j < fixed_times.size(); ++j) {
        std::vector<Point> slice(points.begin() + j * nt, points.begin() + (j + 1) * nt);
        curves.push_back(to_curve(time_label(fixed_times[j], params) + " dimension=" +
                                      format_real(params.dimension),
                                  temperatures, slice));
    }
    return curves;
}

CoherenceCurve run_ramsey_sweep(const SystemParams& params, const QuadratureConfig& quad,
                                const std::vector<double>& taus, const RamseyParams& rp,
                                std::size_t workers) {
    rp.validate();
    if (rp.detection_probability == 0.0) throw ConfigError("ramsey: P_d must be > 0");
    CoherenceCurve curve = run_time_sweep(params, quad, taus, workers);
    std::vector<double> p1, p_eff, vis;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        RamseyParams at = rp;
        at.interaction_time_s = taus[i];
        p1.push_back(ramsey_probability(curve.gamma[i]));
        p_eff.push_back(effective_probability(curve.gamma[i], at));
        vis.push_back(visibility(at).closed_form);
    }
    curve.extra_columns.emplace_back("ramsey_probability", std::move(p1));
    curve.extra_columns.emplace_back("effective_probability", std::move(p_eff));
    curve.extra_columns.emplace_back("visibility", std::move(vis));
    return curve;
}

std::string format_real(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

Metadata describe(const SystemParams& params, const QuadratureConfig& quad) {
    Metadata m;
    m.emplace_back("tool", std::string(kToolName) + " " + std::string(kToolVersion));
    m.emplace_back("mass_kg", format_real(params.mass_kg));
    m.emplace_back("interparticle_distance_m", format_real(params.interparticle_distance_m));
    m.emplace_back("sound_speed_m_per_s", format_real(params.sound_speed_m_per_s));
    m.emplace_back("temperature_K", format_real(params.temperature_K));
    m.emplace_back("dot_size_m", format_real(params.dot_size_m));
    m.emplace_back("kappa_over_g", format_real(params.kappa_over_g));
    m.emplace_back("dimension", format_real(params.dimension));
    m.emplace_back("quad.k_max_factor", format_real(quad.k_max_factor));
    m.emplace_back("quad.rel_tol", format_real(quad.rel_tol));
    m.emplace_back("quad.abs_tol", format_real(quad.abs_tol));
    m.emplace_back("quad.max_panel_depth", std::to_string(quad.max_panel_depth));
    m.emplace_back("quad.oscillation_panels_per_period", std::to_string(quad.oscillation_panels_per_period));
    if (quad.dos_prefactor_scale != 1.0) {
        m.emplace_back("quad.dos_prefactor_scale", format_real(quad.dos_prefactor_scale));
    }
    const DerivedQuantities d = derive(params);
    m.emplace_back("derived.density", format_real(d.density));
    m.emplace_back("derived.interaction", format_real(d.interaction));
    m.emplace_back("derived.healing_length_m", format_real(d.healing_length_m));
    m.emplace_back("derived.dephasing_time_s", format_real(d.dephasing_time_s));
    m.emplace_back("derived.crossover_temperature_K", format_real(d.crossover_temperature_K));
    m.emplace_back("derived.regime", to_string(d.regime));
    for (std::size_t i = 0; i < d.regime_flags.size(); ++i) {
        m.emplace_back("warning." + std::to_string(i), d.regime_flags[i]);
    }
    return m;
}

void write_csv(std::ostream& out, const Metadata& metadata, const std::vector<CoherenceCurve>& curves) {
    for (const auto& [key, value] : metadata) out << "# " << key << " = " << value << '\n';
    for (std::size_t s = 0; s < curves.size(); ++s) {
        out << "# series." << s << " = " << curves[s].label << '\n';
    }
    out << "series,abscissa,gamma,coherence,gamma_abs_error,status";
    if (!curves.empty()) {
        for (const auto& [name, column] : curves.front().extra_columns) out << ',' << name;
    }
    out << '\n';
    for (std::size_t s = 0; s < curves.size(); ++s) {
        const CoherenceCurve& c = curves[s];
        for (std::size_t i = 0; i < c.size(); ++i) {
            out << s << ',' << format_real(c.abscissa[i]) << ',' << format_real(c.gamma[i]) << ','
                << format_real(c.coherence[i]) << ',' << format_real(c.gamma_abs_error[i]) << ','
                << (c.converged[i] ? "ok" : "nonconverged");
            for (const auto& [name, column] : c.extra_columns) out << ',' << format_real(column[i]);
            out << '\n';
        }
    }
}

std::string to_csv(const Metadata& metadata, const std::vector<CoherenceCurve>& curves) {
    std::ostringstream os;
    write_csv(os, metadata, curves);
    return os.str();
}

}  // namespace aqd
