#include <doctest.h>

#include <json.hpp>

#include "aqd/errors.hpp"
#include "aqd/validation.hpp"

using namespace aqd;

namespace {

const CheckResult& find(const ValidationReport& r, const std::string& name) {
    for (const CheckResult& c : r.checks) {
        if (c.name == name) return c;
    }
    FAIL("missing check " << name);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("all checks pass at the reference parameters") {
    const ValidationReport r = run_validation(reference_params(), ValidationOptions{});
    CHECK(r.checks.size() == 13);
    for (const CheckResult& c : r.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.passed);
        CHECK(c.measured <= c.threshold);
    }
    CHECK(r.passed());
}

TEST_CASE("a mis-scaled density of states is caught") {
    ValidationOptions opts;
    opts.quad.dos_prefactor_scale = 1.05;
    const ValidationReport r = run_validation(reference_params(), opts);
    CHECK_FALSE(r.passed());
    // the lattice routes never touch S_D, so they keep agreeing
    CHECK(find(r, "route_equality_D1").passed);
    CHECK(find(r, "route_equality_D3").passed);
    CHECK_FALSE(find(r, "quadrature_vs_mode_sum_D1").passed);
    CHECK_FALSE(find(r, "quadrature_vs_mode_sum_D2").passed);
    CHECK_FALSE(find(r, "quadrature_vs_mode_sum_D3").passed);
    CHECK_FALSE(find(r, "asymptotic_D1").passed);
    CHECK_FALSE(find(r, "asymptotic_D2").passed);
}

TEST_CASE("dimension subset and JSON report") {
    ValidationOptions opts;
    opts.dimensions = {2};
    const ValidationReport r = run_validation(reference_params(), opts);
    CHECK(r.checks.size() == 5);
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j.at("passed").get<bool>());
    CHECK(j.at("checks").size() == 5);
    CHECK(j.at("checks")[0].at("name") == "route_equality_D2");

    opts.dimensions = {4};
    CHECK_THROWS_AS(run_validation(reference_params(), opts), ConfigError);
}

TEST_CASE("the report is deterministic") {
    const ValidationReport a = run_validation(reference_params(), ValidationOptions{});
    const ValidationReport b = run_validation(reference_params(), ValidationOptions{});
    CHECK(a.to_json() == b.to_json());
}
