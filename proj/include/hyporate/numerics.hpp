#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace hyporate::num {

struct MinResult {
    double x = 0.0;
    double value = 0.0;
    bool at_boundary = false;
};

// Golden-section minimization on [lo, hi]; log_scale searches in log(x).
// The bracket must satisfy 0 < lo < hi when log_scale is set.
MinResult golden_min(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 60, bool log_scale = false);

MinResult golden_max(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 60, bool log_scale = false);

// Golden-section refinement seeded from the best cell of an n-point scan.
MinResult scan_then_golden_min(const std::function<double(double)>& f, double lo, double hi,
                               int scan_points, int iters = 60, bool log_scale = false);

MinResult scan_then_golden_max(const std::function<double(double)>& f, double lo, double hi,
                               int scan_points, int iters = 60, bool log_scale = false);

// Adaptive Simpson quadrature with Richardson correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_depth = 40);

// Root of a monotone function by bisection; f(lo) and f(hi) must straddle 0.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, int iters = 200);

// Linearly and log-spaced grids.
std::vector<double> linear_grid(double lo, double hi, int n);
std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> geometric_times(double t_min, double t_max, int points_per_decade = 200);

}  // namespace hyporate::num
