// aqd: command-line front end: coherence sweeps, Ramsey observables, self-validation
//
// Exit codes: 0 success, 2 config/usage error, 3 numerical non-convergence,
// 4 validation failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aqd/dephasing.hpp"
#include "aqd/errors.hpp"
#include "aqd/measurement.hpp"
#include "aqd/physical_system.hpp"
#include "aqd/sweep.hpp"
#include "aqd/validation.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitValidation = 4;

struct CommonOptions {
    std::string config;
    std::string out;
    std::string grid;
    std::string times;
    std::string dims;
    double rel_tol{1e-9};
    std::size_t workers{1};
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_grid, bool with_times, bool with_dims) {
    cmd->add_option("--config", o.config, "key = value parameter file (SI units); reference parameters if omitted");
    cmd->add_option("--out", o.out, "output CSV path (stdout if omitted)");
    if (with_grid) cmd->add_option("--grid", o.grid, "grid: a,b,c | lin:a:b:n | log:a:b:n");
    if (with_times) cmd->add_option("--times", o.times, "fixed times, comma list; suffix sc = sigma/c");
    if (with_dims) cmd->add_option("--dims", o.dims, "comma list of dimensions (default: config value)");
    cmd->add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1, 1024));
}

aqd::SystemParams load_params(const CommonOptions& o) {
    return o.config.empty() ? aqd::reference_params() : aqd::load_config(o.config);
}

aqd::QuadratureConfig quad_config(const CommonOptions& o) {
    aqd::QuadratureConfig q;
    q.rel_tol = o.rel_tol;
    q.validate();
    return q;
}

std::vector<double> dims_or_default(const CommonOptions& o, const aqd::SystemParams& p) {
    if (o.dims.empty()) return {p.dimension};
    return aqd::parse_grid(o.dims);
}

void emit(const std::string& path, const aqd::Metadata& meta,
          const std::vector<aqd::CoherenceCurve>& curves) {
    if (path.empty()) {
        aqd::write_csv(std::cout, meta, curves);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw aqd::ConfigError("cannot write '" + path + "'");
    aqd::write_csv(out, meta, curves);
    if (!out) throw aqd::ConfigError("write failed for '" + path + "'");
}

std::string suffixed_path(const std::string& path, double dimension) {
    const std::string tag = "_D" + aqd::format_real(dimension);
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

int status_of(const std::vector<aqd::CoherenceCurve>& curves) {
    for (const auto& c : curves) {
        if (!c.all_converged()) {
            std::cerr << "warning: some points did not converge (marked 'nonconverged')\n";
            return kExitNonConvergence;
        }
    }
    return 0;
}

aqd::Metadata header(const aqd::SystemParams& p, const aqd::QuadratureConfig& q,
                     const char* command, const char* abscissa) {
    aqd::Metadata meta = aqd::describe(p, q);
    meta.insert(meta.begin() + 1, {"command", command});
    meta.insert(meta.begin() + 2, {"abscissa", abscissa});
    return meta;
}

int run_time(const CommonOptions& o) {
    const auto params = load_params(o);
    const auto quad = quad_config(o);
    const auto grid = o.grid.empty() ? aqd::default_time_grid(params)
                                     : aqd::parse_grid(o.grid, params.dephasing_time_s());
    std::vector<aqd::CoherenceCurve> curves;
    for (double d : dims_or_default(o, params)) {
        curves.push_back(aqd::run_time_sweep(params.with_dimension(d), quad, grid, o.workers));
    }
    emit(o.out, header(params, quad, "time-sweep", "time_s"), curves);
    return status_of(curves);
}

int run_temperature(const CommonOptions& o) {
    const auto params = load_params(o);
    const auto quad = quad_config(o);
    const auto grid = o.grid.empty() ? aqd::default_temperature_grid() : aqd::parse_grid(o.grid);
    const auto times = o.times.empty() ? aqd::default_fixed_times(params)
                                       : aqd::parse_grid(o.times, params.dephasing_time_s());
    const auto dims = dims_or_default(o, params);
    if (dims.size() > 1 && o.out.empty()) {
        throw aqd::ConfigError("temp-sweep with several --dims needs --out (one file per dimension)");
    }
    int status = 0;
    for (double d : dims) {
        const auto p = params.with_dimension(d);
        const auto curves = aqd::run_temperature_sweep(p, quad, grid, times, o.workers);
        const std::string path = dims.size() > 1 ? suffixed_path(o.out, d) : o.out;
        emit(path, header(p, quad, "temp-sweep", "temperature_K"), curves);
        status = std::max(status, status_of(curves));
    }
    return status;
}

int run_dimension(const CommonOptions& o) {
    const auto params = load_params(o);
    const auto quad = quad_config(o);
    const auto grid = o.grid.empty() ? aqd::default_dimension_grid() : aqd::parse_grid(o.grid);
    const auto times = o.times.empty() ? aqd::default_fixed_times(params)
                                       : aqd::parse_grid(o.times, params.dephasing_time_s());
    const auto curves = aqd::run_dimension_sweep(params, quad, grid, times, o.workers);
    emit(o.out, header(params, quad, "dim-sweep", "dimension"), curves);
    return status_of(curves);
}

int run_ramsey(const CommonOptions& o, const aqd::RamseyParams& rp) {
    const auto params = load_params(o);
    const auto quad = quad_config(o);
    const auto grid = o.grid.empty() ? aqd::default_time_grid(params)
                                     : aqd::parse_grid(o.grid, params.dephasing_time_s());
    const auto curve = aqd::run_ramsey_sweep(params, quad, grid, rp, o.workers);
    auto meta = header(params, quad, "ramsey", "interaction_time_s");
    meta.emplace_back("ramsey.detection_probability", aqd::format_real(rp.detection_probability));
    meta.emplace_back("ramsey.spurious_probability", aqd::format_real(rp.spurious_probability));
    meta.emplace_back("ramsey.extrinsic_rate", aqd::format_real(rp.extrinsic_rate));
    for (double tau : {grid.front(), grid.back()}) {
        aqd::RamseyParams at = rp;
        at.interaction_time_s = tau;
        for (const auto& w : at.warnings()) meta.emplace_back("warning.ramsey", w);
    }
    emit(o.out, meta, {curve});
    return status_of({curve});
}

int run_validate(const CommonOptions& o, double inject_dos_scale) {
    const auto params = load_params(o);
    aqd::ValidationOptions opts;
    opts.quad = quad_config(o);
    opts.quad.dos_prefactor_scale = inject_dos_scale;
    if (!o.dims.empty()) {
        opts.dimensions.clear();
        for (double d : aqd::parse_grid(o.dims)) {
            if (d != std::floor(d)) throw aqd::ConfigError("validate: --dims must be integers");
            opts.dimensions.push_back(static_cast<int>(d));
        }
    }
    const auto report = aqd::run_validation(params, opts);
    const std::string json = report.to_json() + "\n";
    if (o.out.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
        if (!out) throw aqd::ConfigError("cannot write '" + o.out + "'");
        out << json;
    }
    for (const auto& c : report.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured=" << c.measured
                  << " threshold=" << c.threshold << "\n";
    }
    return report.passed() ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dephasing of an atomic quantum dot in a D-dimensional BEC"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(aqd::kToolVersion));

    CommonOptions time_opts, temp_opts, dim_opts, ramsey_opts, validate_opts;
    aqd::RamseyParams rp;
    rp.detection_probability = 1.0;
    double inject_dos_scale = 1.0;

    auto* time_cmd = app.add_subcommand("time-sweep", "coherence vs interaction time");
    add_common(time_cmd, time_opts, true, false, true);
    auto* temp_cmd = app.add_subcommand("temp-sweep", "coherence vs temperature at fixed times");
    add_common(temp_cmd, temp_opts, true, true, true);
    auto* dim_cmd = app.add_subcommand("dim-sweep", "coherence vs effective dimension at fixed times");
    add_common(dim_cmd, dim_opts, true, true, false);
    auto* ramsey_cmd = app.add_subcommand("ramsey", "Ramsey probabilities and visibility vs tau");
    add_common(ramsey_cmd, ramsey_opts, true, false, false);
    ramsey_cmd->add_option("--detect-prob", rp.detection_probability, "P_d")->check(CLI::Range(0.0, 1.0));
    ramsey_cmd->add_option("--spurious-prob", rp.spurious_probability, "P_s")->check(CLI::Range(0.0, 1.0));
    ramsey_cmd->add_option("--extrinsic-rate", rp.extrinsic_rate, "gamma_d in 1/s")->check(CLI::NonNegativeNumber);
    auto* validate_cmd = app.add_subcommand("validate", "oracle and closed-form self-checks (JSON report)");
    add_common(validate_cmd, validate_opts, false, false, true);
    validate_cmd->add_option("--inject-dos-scale", inject_dos_scale)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*time_cmd) return run_time(time_opts);
        if (*temp_cmd) return run_temperature(temp_opts);
        if (*dim_cmd) return run_dimension(dim_opts);
        if (*ramsey_cmd) return run_ramsey(ramsey_opts, rp);
        if (*validate_cmd) return run_validate(validate_opts, inject_dos_scale);
    } catch (const aqd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const aqd::NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
