#include <doctest.h>

#include <cmath>
#include <random>

#include "aqd/dephasing.hpp"
#include "aqd/errors.hpp"
#include "aqd/mode_sum.hpp"
#include "test_support.hpp"

using namespace aqd;
using aqd::test::rel_diff;

TEST_CASE("gamma and the phase variance are the same lattice sum") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ts(0.1, 20.0), temp(0.0, 1e-6), ratio(-2.0, 2.0);
    for (int d = 1; d <= 3; ++d) {
        for (int i = 0; i < 6; ++i) {
            const SystemParams p =
                reference_params(d).with_temperature(temp(rng)).with_kappa_over_g(ratio(rng));
            const ModeSumConfig cfg = ModeSumConfig::for_params(p, 30.0);
            const double t = ts(rng) * p.dephasing_time_s();
            const double g = gamma_discrete(p, cfg, t).value;
            const double v = phase_variance_discrete(p, cfg, t).value;
            CHECK(rel_diff(g, 0.5 * p.kappa_over_g * p.kappa_over_g * v) < 1e-12);
        }
    }
}

TEST_CASE("lattice sum reproduces the continuum integral") {
    const QuadratureConfig quad{};
    for (int d = 1; d <= 3; ++d) {
        const SystemParams p = reference_params(d);
        const ModeSumConfig cfg = ModeSumConfig::for_params(p, 100.0);
        for (double s : {0.1, 1.0, 10.0}) {
            const double t = s * p.dephasing_time_s();
            CAPTURE(d);
            CAPTURE(s);
            CHECK(rel_diff(gamma_discrete(p, cfg, t).value, gamma_of_t(p, quad, t).value) < 1e-6);
        }
    }
}

TEST_CASE("dropping the zero mode costs O(1/L) in 1D") {
    const SystemParams p = reference_params(1.0);
    const double t = 5 * p.dephasing_time_s();
    const double exact = gamma_of_t(p, QuadratureConfig{}, t).value;
    double previous = 0.0;
    for (double box : {100.0, 200.0, 400.0}) {
        ModeSumConfig cfg = ModeSumConfig::for_params(p, box);
        cfg.include_zero_mode = false;
        const double err = std::abs(gamma_discrete(p, cfg, t).value - exact);
        if (previous > 0.0) CHECK(err / previous == doctest::Approx(0.5).epsilon(0.02));
        previous = err;
    }
}

TEST_CASE("radial shells equal the full lattice") {
    for (int d = 2; d <= 3; ++d) {
        const SystemParams p = reference_params(d).with_temperature(5e-8);
        ModeSumConfig full = ModeSumConfig::for_params(p, 25.0);
        full.strategy = LatticeStrategy::full_lattice;
        ModeSumConfig shells = full;
        shells.strategy = LatticeStrategy::radial_shells;
        const double t = 3 * p.dephasing_time_s();
        const ModeSum a = gamma_discrete(p, full, t);
        const ModeSum b = gamma_discrete(p, shells, t);
        CHECK(rel_diff(b.value, a.value) < 1e-12);
        CHECK(a.mode_count == b.mode_count);
        CHECK(a.mode_count == count_modes(p, full));
    }
}

TEST_CASE("edge cases and limits") {
    const SystemParams p = reference_params(2.0);
    const ModeSumConfig cfg = ModeSumConfig::for_params(p, 20.0);
    CHECK(gamma_discrete(p, cfg, 0.0).value == 0.0);
    CHECK(smoothed_correlation(p, cfg, 0.0) == doctest::Approx(derive(p).density).epsilon(1e-15));

    const double t = 2 * p.dephasing_time_s();
    CHECK(rel_diff(smoothed_correlation(p, cfg, t),
                   derive(p).density * std::exp(-gamma_discrete(p, cfg, t).value)) < 1e-12);

    SUBCASE("mode budget") {
        ModeSumConfig small = cfg;
        small.max_modes = 10;
        CHECK_THROWS_AS(gamma_discrete(p, small, t), ModeBudgetExceeded);
    }
    SUBCASE("non-integer dimension") {
        CHECK_THROWS_AS(gamma_discrete(p.with_dimension(2.5), cfg, t), std::domain_error);
    }
    SUBCASE("cutoff below 6/sigma") {
        ModeSumConfig bad = cfg;
        bad.k_cutoff = 5.0 / p.dot_size_m;
        CHECK_THROWS_AS(gamma_discrete(p, bad, t), ConfigError);
    }
    SUBCASE("binned shells need D >= 2") {
        ModeSumConfig bad = ModeSumConfig::for_params(p.with_dimension(1.0), 20.0);
        bad.strategy = LatticeStrategy::radial_shells;
        bad.shell_width = 0.1 / p.dot_size_m;
        CHECK_THROWS_AS(gamma_discrete(p.with_dimension(1.0), bad, t), ConfigError);
    }
    SUBCASE("zero mode vanishes at T = 0") {
        const SystemParams cold = p.with_temperature(0.0);
        ModeSumConfig without = cfg;
        without.include_zero_mode = false;
        CHECK(gamma_discrete(cold, cfg, t).value == gamma_discrete(cold, without, t).value);
    }
}
