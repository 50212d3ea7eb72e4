#include <doctest.h>

#include <cmath>

#include "aqd/constants.hpp"
#include "aqd/quadrature.hpp"

using namespace aqd::quadrature;

TEST_CASE("G7/K15 is exact for polynomials up to degree 22") {
    const auto r = gauss_kronrod15([](double x) { return std::pow(x, 20) + 3 * x; }, 0.0, 1.0);
    CHECK(r.kronrod == doctest::Approx(1.0 / 21.0 + 1.5).epsilon(1e-14));
}

TEST_CASE("adaptive integration of smooth and oscillatory functions") {
    Options opts;
    opts.rel_tol = 1e-12;
    const auto g = integrate([](double x) { return std::exp(-x * x); }, 0.0, 8.0, opts);
    CHECK(g.converged);
    CHECK(g.value == doctest::Approx(0.5 * std::sqrt(aqd::constants::pi)).epsilon(1e-13));

    // Int_0^{20 pi} sin^2(50 x) dx = 10 pi
    const auto pts = uniform_breakpoints(0.0, 20 * aqd::constants::pi, 64);
    const auto s = integrate([](double x) { return std::sin(50 * x) * std::sin(50 * x); }, pts, opts);
    CHECK(s.converged);
    CHECK(s.value == doctest::Approx(10 * aqd::constants::pi).epsilon(1e-12));
    CHECK(std::abs(s.value - 10 * aqd::constants::pi) <= s.abs_error + 1e-12);
}

TEST_CASE("integrable endpoint singularity refines down to the depth limit") {
    Options opts;
    opts.rel_tol = 1e-10;
    opts.max_depth = 60;
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("non-convergence is reported, not thrown") {
    Options opts;
    opts.rel_tol = 1e-15;
    opts.max_depth = 2;
    const auto r = integrate([](double x) { return std::sin(1 / (x + 1e-3)); }, 0.0, 1.0, opts);
    CHECK_FALSE(r.converged);
    CHECK(r.abs_error > 0.0);
}

TEST_CASE("results are bit-reproducible") {
    Options opts;
    const auto pts = uniform_breakpoints(0.0, 3.0, 7);
    auto f = [](double x) { return std::cos(9 * x) * std::exp(-x); };
    const auto a = integrate(f, pts, opts);
    const auto b = integrate(f, pts, opts);
    CHECK(a.value == b.value);
    CHECK(a.abs_error == b.abs_error);
}

TEST_CASE("compensated summation") {
    std::vector<double> terms{1.0, 1e100, 1.0, -1e100};
    CHECK(compensated_sum(terms) == 2.0);
}
