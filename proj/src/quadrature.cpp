#include "aqd/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace aqd::quadrature {

namespace {

// Abscissae and weights of the 15-point Kronrod rule and its embedded 7-point
// Gauss rule (QUADPACK qk15 tables).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a;
    double b;
    double value;
    double error;
    int depth;
    std::size_t id;  // creation order, breaks error ties deterministically
};

struct WorseFirst {
    bool operator()(const Interval& x, const Interval& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.id > y.id;
    }
};

Interval evaluate(const std::function<double(double)>& f, double a, double b, int depth,
                  std::size_t id) {
    const RuleEstimate r = gauss_kronrod15(f, a, b);
    // Round-off floor as in QUADPACK: |K - G| alone can drop below what the
    // arithmetic resolves.
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * r.absolute;
    return Interval{a, b, r.kronrod, std::max(std::abs(r.kronrod - r.gauss), floor), depth, id};
}

}  // namespace

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        correction_ += (sum_ - t) + x;
    } else {
        correction_ += (x - t) + sum_;
    }
    sum_ = t;
}

double compensated_sum(std::span<const double> terms) {
    CompensatedSum s;
    for (double x : terms) s.add(x);
    return s.value();
}

RuleEstimate gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double absolute = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        absolute += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return RuleEstimate{kronrod * half, gauss * half, absolute * std::abs(half)};
}

std::vector<double> uniform_breakpoints(double a, double b, std::size_t panels) {
    if (panels == 0) throw std::invalid_argument("uniform_breakpoints: zero panels");
    std::vector<double> pts(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) {
        pts[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
    }
    pts.back() = b;
    return pts;
}

Result integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                 const Options& opts) {
    if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need two breakpoints");
    if (!(opts.rel_tol > 0) || !(opts.abs_tol > 0)) {
        throw std::invalid_argument("integrate: tolerances must be positive");
    }

    std::priority_queue<Interval, std::vector<Interval>, WorseFirst> active;
    std::vector<Interval> settled;  // at max depth, cannot be refined further
    std::size_t next_id = 0;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        Interval iv = evaluate(f, breakpoints[i], breakpoints[i + 1], 0, next_id++);
        total += iv.value;
        total_error += iv.error;
        active.push(iv);
    }
    std::size_t evaluations = 15 * next_id;

    auto tolerance = [&](double value) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };

    while (total_error > tolerance(total) && !active.empty() &&
           active.size() + settled.size() < opts.max_intervals) {
        Interval worst = active.top();
        active.pop();
        if (worst.depth >= opts.max_depth) {
            settled.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Interval left = evaluate(f, worst.a, mid, worst.depth + 1, next_id++);
        Interval right = evaluate(f, mid, worst.b, worst.depth + 1, next_id++);
        evaluations += 30;
        total += (left.value + right.value) - worst.value;
        total_error += (left.error + right.error) - worst.error;
        active.push(left);
        active.push(right);
    }

    // Final sums in position order so the result does not depend on heap history.
    std::vector<Interval> all = std::move(settled);
    all.reserve(all.size() + active.size());
    while (!active.empty()) {
        all.push_back(active.top());
        active.pop();
    }
    std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    CompensatedSum value;
    CompensatedSum error;
    for (const Interval& iv : all) {
        value.add(iv.value);
        error.add(iv.error);
    }

    Result r;
    r.value = value.value();
    r.abs_error = error.value();
    r.evaluations = evaluations;
    r.intervals = all.size();
    r.converged = r.abs_error <= tolerance(r.value);
    return r;
}

Result integrate(const std::function<double(double)>& f, double a, double b, const Options& opts) {
    const std::array<double, 2> pts{a, b};
    return integrate(f, pts, opts);
}

}  // namespace aqd::quadrature
