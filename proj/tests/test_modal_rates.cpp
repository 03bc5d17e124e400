#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "hyporate/modal_rates.hpp"
#include "hyporate/numerics.hpp"

using namespace hyporate;

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

TEST_CASE("mode constants: value at s = 1 and asymptotics") {
    const AbstractConstants k = constants_of_mode(1.0);
    CHECK(k.lambda_m == 1.0);
    CHECK(k.lambda_M == 1.0);
    CHECK(k.C_M == doctest::Approx(0.5 * (1.0 + kSqrt3)).epsilon(1e-15));

    CHECK(constants_of_mode(1e6).C_M == doctest::Approx(kSqrt3).epsilon(1e-5));
    // Leading order C_M ~ s at small s.
    CHECK(constants_of_mode(1e-8).C_M == doctest::Approx(1e-8).epsilon(1e-6));
}

TEST_CASE("coarse rate point: values and cross-module consistency") {
    const RatePoint p = coarse_rate(1.0);
    CHECK(p.lambda == doctest::Approx(1.0 / (3.0 * std::pow(1.0 + kSqrt3, 2))).epsilon(1e-14));
    CHECK(p.lambda == doctest::Approx(0.04466).epsilon(1e-3));
    // Large-s limit 1/9.
    CHECK(coarse_rate(1e7).lambda == doctest::Approx(1.0 / 9.0).epsilon(1e-6));

    // The coarse point is exactly the baseline machinery applied to the mode
    // constants.
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double s = std::pow(10.0, unif(rng));
        const TwistChoice base = rate_bdms(constants_of_mode(s));
        const RatePoint q = coarse_rate(s);
        CHECK(q.lambda == doctest::Approx(base.lambda).epsilon(1e-12));
        CHECK(q.delta == doctest::Approx(base.delta).epsilon(1e-12));
    }
}

TEST_CASE("mode discriminant sign structure at lambda = 0") {
    // h(delta, 0, s) < 0 exactly on an interval of twists (0, delta_max).
    for (double s : {0.3, 1.0, 4.0}) {
        const double q = s * s / (1.0 + s * s);
        const double r = s * (1.0 + kSqrt3 * s) / (1.0 + s * s);
        const double delta_max = 4.0 * q / (r * r + 4.0 * q * q);
        for (double f : {0.1, 0.5, 0.9}) CHECK(disc_mode(f * delta_max, 0.0, s) < 0.0);
        for (double f : {1.1, 2.0}) CHECK(disc_mode(f * delta_max, 0.0, s) > 0.0);
    }
}

TEST_CASE("scaled discriminant: eps = 1 recovers the mode discriminant and the twist substitution") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> unif(0.05, 1.5);
    for (int rep = 0; rep < 100; ++rep) {
        const double d = unif(rng), l = unif(rng), s = unif(rng), eps = unif(rng);
        CHECK(disc_scaled(d, l, 1.0, s) == doctest::Approx(disc_mode(d, l, s)).epsilon(1e-13));
        // delta* = delta (1 + s^2) / (eps^2 + s^2) maps the scaled problem to
        // the unscaled one exactly.
        const double dstar = d * (1.0 + s * s) / (eps * eps + s * s);
        CHECK(disc_scaled(d, l, eps, s) == doctest::Approx(disc_mode(dstar, l, s)).epsilon(1e-12));
    }
}

TEST_CASE("closed forms solve the relaxed discriminant exactly") {
    for (double s : num::log_grid(1e-3, 1e3, 400)) {
        const double l = closed_form_rate(s);
        const double d = closed_form_delta(s);
        CHECK(std::abs(disc_closed_form(d, l, s)) <= 1e-9);
    }
}

TEST_CASE("closed-form limits") {
    CHECK(closed_form_rate(1e6) == doctest::Approx(1.0 - std::sqrt(3.0 / 7.0)).epsilon(1e-5));
    CHECK(closed_form_delta(1e6) == doctest::Approx(2.0 / 7.0).epsilon(1e-4));
    CHECK(closed_form_rate(1e-4) / 1e-8 == doctest::Approx(2.0).epsilon(2e-3));
    CHECK(closed_form_rate(1.0) == doctest::Approx(0.165236).epsilon(1e-5));
    CHECK(closed_form_delta(1.0) == doctest::Approx(0.325627).epsilon(1e-5));
}

TEST_CASE("closed-form rate is monotone increasing") {
    const auto grid = num::log_grid(1e-3, 1e4, 500);
    double prev = closed_form_rate(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = closed_form_rate(grid[i]);
        CHECK(cur >= prev * (1.0 - 1e-13));
        prev = cur;
    }
}

TEST_CASE("optimized curves: ordering, feasibility and triangle membership") {
    const auto grid = num::log_grid(1e-2, 1e2, 40);
    for (double s : grid) {
        const RatePoint p0 = coarse_rate(s);
        const RatePoint p1 = optimize_mode_rate(RateVariant::abstract_opt, s);
        const RatePoint p2 = optimize_mode_rate(RateVariant::mode_opt, s);
        const double lt = closed_form_rate(s);
        CHECK(p1.lambda >= p0.lambda * (1.0 - 1e-9));
        CHECK(p2.lambda >= p1.lambda * (1.0 - 1e-9));
        CHECK(p2.lambda >= lt * (1.0 - 1e-9));
        // Triangle membership with the optimizer's feasible twist.
        CHECK(disc_abstract(p1.delta, p1.lambda, s) <= 0.0);
        CHECK(p1.delta > 0.0);
        CHECK(p1.delta < 1.0);
        CHECK(p1.lambda < 2.0 * (1.0 - p1.delta));
        CHECK(disc_mode(p2.delta, p2.lambda, s) <= 0.0);
        CHECK(p2.delta < (1.0 + s * s) / (s * s));
        CHECK(p2.lambda < 2.0 * (1.0 - p2.delta * s * s / (1.0 + s * s)));
        // Relative gap to the closed form stays modest.
        CHECK((p2.lambda - lt) / p2.lambda <= 0.15);
        // Equivalence constant of the returned twist.
        CHECK(p2.C_of_s ==
              doctest::Approx((1.0 + s * s + p2.delta * s) / (1.0 + s * s - p2.delta * s)));
    }
}

TEST_CASE("gap to the closed form stays bounded in the parabolic scaling") {
    for (double s : num::log_grid(1e-2, 1e2, 25)) {
        const double gap = optimize_mode_rate(RateVariant::mode_opt, s).lambda - closed_form_rate(s);
        CHECK(gap >= -1e-10);
        CHECK(gap * (1.0 + 1.0 / (s * s)) <= 0.2);
    }
}

TEST_CASE("scaled variant is independent of eps") {
    for (double s : {0.05, 0.7, 3.0, 40.0}) {
        const double reference = optimize_mode_rate(RateVariant::mode_opt, s).lambda;
        for (double eps : {0.1, 1.0, 10.0}) {
            const RatePoint p = optimize_mode_rate(RateVariant::scaled, s, eps);
            CHECK(std::abs(p.lambda - reference) <= 1e-8);
            // Triangle of the scaled family.
            const double q = s * s / (eps * eps + s * s);
            CHECK(p.delta < (1.0 + eps * eps / (s * s)));
            CHECK(p.lambda < 2.0 * (1.0 - p.delta * q));
        }
    }
}

TEST_CASE("rate_curve wraps the per-point optimizer and keeps the grid order") {
    const auto grid = num::log_grid(0.1, 10.0, 7);
    const RateCurve curve = rate_curve(RateVariant::mode_opt, grid);
    REQUIRE(curve.points.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(curve.points[i].s == grid[i]);
        CHECK(curve.points[i].lambda > 0.0);
    }
}

TEST_CASE("diffusion limit: rate tends to 2 s^2 and the twist scales like 2 (1 + s^2) eps") {
    const std::vector<double> eps_grid{1.0, 1e-2, 1e-4};
    for (double s : {0.2, 0.5, 1.0}) {
        const auto points = diffusion_limit_rate(s, eps_grid);
        REQUIRE(points.size() == 3);
        // eps = 1 is the unscaled problem.
        CHECK(points[0].lambda ==
              doctest::Approx(optimize_mode_rate(RateVariant::mode_opt, s).lambda).epsilon(1e-8));
        const auto& last = points.back();
        CHECK(last.lambda == doctest::Approx(2.0 * s * s).epsilon(1e-2));
        CHECK(last.delta / (2.0 * (1.0 + s * s) * last.eps) == doctest::Approx(1.0).epsilon(2e-2));
    }
}

TEST_CASE("two-velocity refinement: sharp twist closes the discriminant") {
    for (int xi = 1; xi <= 10; ++xi) {
        const GtSharpRate sharp = gt_sharp_rate(static_cast<double>(xi));
        CHECK(sharp.lambda == 1.0);
        CHECK(sharp.delta_bar ==
              doctest::Approx((1.0 + xi * xi) / (2.0 * xi * xi)).epsilon(1e-15));
        CHECK(std::abs(disc_gt(sharp.delta_bar, 1.0, xi)) <= 1e-14);
    }
    // The generic machinery stays strictly below the sharp modal rate at s=1.
    CHECK(closed_form_rate(1.0) < 1.0);
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(constants_of_mode(0.0), RangeError);
    CHECK_THROWS_AS(coarse_rate(-1.0), RangeError);
    CHECK_THROWS_AS(optimize_mode_rate(RateVariant::scaled, 1.0, 0.0), RangeError);
    CHECK_THROWS_AS(gt_sharp_rate(0.0), RangeError);
}
