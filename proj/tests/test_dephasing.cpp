#include <doctest.h>

#include <cmath>

#include "aqd/dephasing.hpp"
#include "aqd/errors.hpp"
#include "test_support.hpp"

using namespace aqd;
using aqd::test::rel_diff;

namespace {

const QuadratureConfig kQuad{};

// gamma(t) at the reference parameters, mpmath quad at 30 digits over [0, inf).
struct Frozen {
    double dimension;
    double t_in_sigma_over_c;
    double gamma;
};
constexpr Frozen kFrozen[] = {
    {1, 1, 2.28914692602088994},    {1, 2, 7.56778949532831212},    {1, 10, 57.1206603342985171},
    {2, 1, 0.421617604852146083},   {2, 2, 1.14172634259091097},    {2, 10, 2.89737876369124105},
    {3, 1, 0.0775614979977189783},  {3, 2, 0.170425558802570312},   {3, 10, 0.197085170482621939},
};

}  // namespace

TEST_CASE("gamma matches the extended-precision oracle") {
    for (const Frozen& f : kFrozen) {
        const SystemParams p = reference_params(f.dimension);
        const GammaEstimate g = gamma_of_t(p, kQuad, f.t_in_sigma_over_c * p.dephasing_time_s());
        CAPTURE(f.dimension);
        CAPTURE(f.t_in_sigma_over_c);
        CHECK(rel_diff(g.value, f.gamma) < 1e-8);
        CHECK(std::abs(g.value - f.gamma) <= g.abs_error + 1e-15 * f.gamma);
    }
}

TEST_CASE("gamma(0) = 0 and coherence(0) = 1") {
    for (double d : {1.0, 1.7, 3.0}) {
        const SystemParams p = reference_params(d);
        CHECK(gamma_of_t(p, kQuad, 0.0).value == 0.0);
        CHECK(coherence_of_t(p, kQuad, 0.0) == 1.0);
    }
}

TEST_CASE("gamma scales as (kappa/g)^2 and is even in the coupling") {
    const SystemParams p = reference_params(2.0);
    const double t = 3 * p.dephasing_time_s();
    const double base = gamma_of_t(p, kQuad, t).value;
    CHECK(rel_diff(gamma_of_t(p.with_kappa_over_g(0.3), kQuad, t).value, 0.09 * base) < 1e-12);
    CHECK(rel_diff(gamma_of_t(p.with_kappa_over_g(-2.0), kQuad, t).value, 4 * base) < 1e-12);
}

TEST_CASE("gamma grows with temperature") {
    const SystemParams p = reference_params(1.5);
    const double t = 2 * p.dephasing_time_s();
    double previous = gamma_zero_temperature(p, kQuad, t).value;
    CHECK(rel_diff(gamma_of_t(p.with_temperature(0.0), kQuad, t).value, previous) < 1e-14);
    for (double temp : {1e-9, 1e-8, 1e-7, 1e-6}) {
        const double g = gamma_of_t(p.with_temperature(temp), kQuad, t).value;
        CHECK(g > previous);
        previous = g;
    }
}

TEST_CASE("zero-temperature limits") {
    const SystemParams p = reference_params(3.0).with_temperature(0.0);
    const double tc = p.dephasing_time_s();
    CHECK(rel_diff(gamma_of_t(p, kQuad, 10 * tc).value, 0.00303341209136247362) < 1e-8);
    // t -> inf: (kappa/g)^2 g S_D (1/2) Int k e^{-sigma^2 k^2/2}/(hbar c) dk
    CHECK(rel_diff(gamma_of_t(p, kQuad, 100 * tc).value, 0.00300243846628707636) < 2e-4);
}

TEST_CASE("error estimates stay honest when the tolerance is tightened") {
    QuadratureConfig loose = kQuad;
    loose.rel_tol = 1e-6;
    QuadratureConfig tight = kQuad;
    tight.rel_tol = 1e-12;
    for (double d : {1.0, 2.2, 3.0}) {
        const SystemParams p = reference_params(d);
        for (double s : {0.3, 4.0, 60.0}) {
            const double t = s * p.dephasing_time_s();
            const GammaEstimate a = gamma_of_t(p, loose, t);
            const GammaEstimate b = gamma_of_t(p, tight, t);
            CHECK(std::abs(a.value - b.value) <= a.abs_error + b.abs_error);
            CHECK(b.abs_error <= 1e-11 * b.value + tight.abs_tol + 1e-300);
        }
    }
}

TEST_CASE("non-convergence surfaces the partial estimate") {
    QuadratureConfig q = kQuad;
    q.rel_tol = 1e-15;
    q.abs_tol = 1e-300;
    q.max_panel_depth = 1;
    q.oscillation_panels_per_period = 1;
    const SystemParams p = reference_params(1.0);
    try {
        (void)gamma_of_t(p, q, 10 * p.dephasing_time_s());
        FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
        CHECK(rel_diff(e.partial_estimate(), 57.1206603342985171) < 1e-6);
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("quadrature configuration is validated") {
    QuadratureConfig q = kQuad;
    q.k_max_factor = 5.0;
    CHECK_THROWS_AS(q.validate(), ConfigError);
    q = kQuad;
    q.rel_tol = 0.0;
    CHECK_THROWS_AS(q.validate(), ConfigError);
    CHECK_THROWS_AS(gamma_of_t(reference_params(), kQuad, -1.0), std::domain_error);
}

TEST_CASE("long-time closed forms") {
    // frozen from the extended-precision oracle
    CHECK(rel_diff(decay_rate_1d(reference_params(1.0)), 6207.27470129264828) < 1e-13);
    CHECK(rel_diff(power_law_exponent_2d(reference_params(2.0)), 0.987918451839993056) < 1e-13);
    CHECK(rel_diff(plateau_exponent_3d(reference_params(3.0)), 0.197061220013849887) < 1e-13);
    CHECK(decay_rate_1d(reference_params(1.0).with_temperature(0.0)) == 0.0);
}

TEST_CASE("asymptotic fits meet their residual limits") {
    const SystemParams p1 = reference_params(1.0);
    const double tc = p1.dephasing_time_s();
    const AsymptoticFit f1 = fit_asymptotic_constants(p1, kQuad, 1, 10 * tc, 50 * tc);
    CHECK(f1.fit_residual < kFitResidualLimit1d);
    CHECK(f1.constant > 0.0);
    CHECK(f1.rate_or_exponent == decay_rate_1d(p1));

    const SystemParams p2 = reference_params(2.0);
    const AsymptoticFit f2 = fit_asymptotic_constants(p2, kQuad, 2, 10 * tc, 50 * tc);
    CHECK(f2.fit_residual < kFitResidualLimit2d);

    const double t = 30 * tc;
    const AsymptoticValue v1 = asymptotic_coherence(p1, 1, t, f1);
    CHECK(v1.constant_fitted);
    CHECK(std::abs(std::log(v1.coherence) + gamma_of_t(p1, kQuad, t).value) < kFitResidualLimit1d);
    const AsymptoticValue v2 = asymptotic_coherence(p2, 2, t, f2);
    CHECK(std::abs(std::log(v2.coherence) + gamma_of_t(p2, kQuad, t).value) < kFitResidualLimit2d);

    SUBCASE("windows outside [5, 100] sigma/c are refused") {
        CHECK_THROWS_AS(fit_asymptotic_constants(p1, kQuad, 1, 2 * tc, 50 * tc), std::domain_error);
        CHECK_THROWS_AS(fit_asymptotic_constants(p1, kQuad, 1, 10 * tc, 150 * tc), std::domain_error);
        CHECK_THROWS_AS(fit_asymptotic_constants(p1, kQuad, 3, 10 * tc, 50 * tc), std::domain_error);
    }
    SUBCASE("a wrong slope is caught by the residual") {
        // a mis-scaled S_D changes the slope while the model keeps the closed-form one
        QuadratureConfig broken = kQuad;
        broken.dos_prefactor_scale = 1.5;
        CHECK_THROWS_AS(fit_asymptotic_constants(p1, broken, 1, 10 * tc, 50 * tc), FitError);
    }
}

TEST_CASE("3D plateau is reached") {
    const SystemParams p = reference_params(3.0);
    const double plateau = std::exp(-plateau_exponent_3d(p));
    CHECK(rel_diff(plateau, 0.821140361549547838) < 1e-13);
    const double c50 = coherence_of_t(p, kQuad, 50 * p.dephasing_time_s());
    CHECK(rel_diff(c50, plateau) < 1e-2);
    const AsymptoticValue v = asymptotic_coherence(p, 3, 50 * p.dephasing_time_s());
    CHECK_FALSE(v.constant_fitted);
    CHECK(v.constant == 1.0);
    CHECK(v.coherence == plateau);
}

TEST_CASE("asymptotic_coherence argument checks") {
    const SystemParams p = reference_params(1.0);
    CHECK_THROWS_AS(asymptotic_coherence(p, 4, 10 * p.dephasing_time_s()), std::domain_error);
    CHECK_THROWS_AS(asymptotic_coherence(p, 1, 0.5 * p.dephasing_time_s()), std::domain_error);
    const AsymptoticValue v = asymptotic_coherence(p, 1, 10 * p.dephasing_time_s());
    CHECK_FALSE(v.constant_fitted);
    CHECK(v.coherence == doctest::Approx(std::exp(-6207.27470129264828 * 1e-2)).epsilon(1e-13));
}
