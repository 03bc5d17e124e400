#include "doctest.h"

#include <cmath>

#include "hyporate/numerics.hpp"

using namespace hyporate;

TEST_CASE("golden section finds interior minima on linear and log scales") {
    auto f = [](double x) { return (x - 0.7) * (x - 0.7) + 1.0; };
    const auto lin = num::golden_min(f, 0.0, 2.0, 80);
    CHECK(lin.x == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(lin.at_boundary == false);

    const auto lg = num::golden_min(f, 1e-4, 10.0, 90, /*log_scale=*/true);
    CHECK(lg.x == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(lg.at_boundary == false);
}

TEST_CASE("golden section flags boundary minima") {
    auto f = [](double x) { return x; };
    const auto r = num::golden_min(f, 0.5, 2.0, 60);
    CHECK(r.at_boundary);
    CHECK(r.x == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("scan plus refinement survives a narrow well next to a flat plateau") {
    // Minimum hidden in a well of width ~1e-3.
    auto f = [](double x) {
        const double d = x - 0.42;
        return 1.0 - std::exp(-d * d / 1e-6);
    };
    const auto r = num::scan_then_golden_min(f, 0.0, 1.0, 512, 80);
    CHECK(r.x == doctest::Approx(0.42).epsilon(1e-6));
    CHECK(r.value <= 1e-9);
}

TEST_CASE("adaptive simpson integrates smooth and boundary-layer integrands") {
    const double smooth = num::adaptive_simpson([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(smooth == doctest::Approx(2.0).epsilon(1e-12));

    // Sharp Gaussian layer near zero, the shape of the line-bound integrand
    // at large times.
    const double t = 1e4;
    const double layer = num::adaptive_simpson(
        [&](double s) { return std::exp(-2.0 * s * s * t); }, 0.0, 0.5, 1e-12);
    CHECK(layer == doctest::Approx(0.5 * std::sqrt(M_PI / (2.0 * t))).epsilon(1e-9));
}

TEST_CASE("bisection root finder") {
    const double r =
        num::bisect_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0, 200);
    CHECK(r == doctest::Approx(std::cbrt(2.0)).epsilon(1e-13));
    CHECK_THROWS(num::bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 50));
}

TEST_CASE("grids are ordered, inclusive and sized as requested") {
    const auto lin = num::linear_grid(-1.0, 3.0, 9);
    CHECK(lin.size() == 9);
    CHECK(lin.front() == -1.0);
    CHECK(lin.back() == 3.0);

    const auto lg = num::log_grid(1e-3, 1e3, 400);
    CHECK(lg.size() == 400);
    CHECK(lg.front() == 1e-3);
    CHECK(lg.back() == 1e3);
    for (std::size_t i = 1; i < lg.size(); ++i) CHECK(lg[i] > lg[i - 1]);

    const auto times = num::geometric_times(1e-2, 1e3, 200);
    CHECK(times.front() == 1e-2);
    CHECK(times.back() == 1e3);
    CHECK(times.size() >= 1000);
}
