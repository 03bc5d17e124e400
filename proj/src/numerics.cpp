#include "hyporate/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "hyporate/errors.hpp"

namespace hyporate::num {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/phi

MinResult golden_min_impl(const std::function<double(double)>& f, double lo, double hi,
                          int iters, bool log_scale) {
    if (!(lo < hi)) throw RangeError("golden_min: empty bracket");
    if (log_scale && lo <= 0.0) throw RangeError("golden_min: log scale needs positive bracket");
    auto to_x = [&](double u) { return log_scale ? std::exp(u) : u; };
    double a = log_scale ? std::log(lo) : lo;
    double b = log_scale ? std::log(hi) : hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(to_x(c));
    double fd = f(to_x(d));
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(to_x(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(to_x(d));
        }
    }
    MinResult r;
    const double u = (fc < fd) ? c : d;
    r.x = to_x(u);
    r.value = std::min(fc, fd);
    const double res = b - a;
    const double span = (log_scale ? std::log(hi) - std::log(lo) : hi - lo);
    const double edge = std::max(4.0 * res, 1e-9 * span);
    const double au = log_scale ? std::log(lo) : lo;
    const double bu = log_scale ? std::log(hi) : hi;
    r.at_boundary = (u - au <= edge) || (bu - u <= edge);
    return r;
}

}  // namespace

MinResult golden_min(const std::function<double(double)>& f, double lo, double hi, int iters,
                     bool log_scale) {
    return golden_min_impl(f, lo, hi, iters, log_scale);
}

MinResult golden_max(const std::function<double(double)>& f, double lo, double hi, int iters,
                     bool log_scale) {
    MinResult r = golden_min_impl([&](double x) { return -f(x); }, lo, hi, iters, log_scale);
    r.value = -r.value;
    return r;
}

MinResult scan_then_golden_min(const std::function<double(double)>& f, double lo, double hi,
                               int scan_points, int iters, bool log_scale) {
    if (scan_points < 3) return golden_min(f, lo, hi, iters, log_scale);
    auto grid = log_scale ? log_grid(lo, hi, scan_points) : linear_grid(lo, hi, scan_points);
    int best = 0;
    double best_val = f(grid[0]);
    for (int i = 1; i < scan_points; ++i) {
        const double v = f(grid[static_cast<std::size_t>(i)]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double cell_lo = grid[static_cast<std::size_t>(std::max(0, best - 1))];
    const double cell_hi = grid[static_cast<std::size_t>(std::min(scan_points - 1, best + 1))];
    MinResult r = (cell_lo < cell_hi) ? golden_min_impl(f, cell_lo, cell_hi, iters, log_scale)
                                      : MinResult{grid[static_cast<std::size_t>(best)], best_val, false};
    if (best_val < r.value) {
        r.x = grid[static_cast<std::size_t>(best)];
        r.value = best_val;
    }
    r.at_boundary = (best == 0 || best == scan_points - 1);
    return r;
}

MinResult scan_then_golden_max(const std::function<double(double)>& f, double lo, double hi,
                               int scan_points, int iters, bool log_scale) {
    MinResult r =
        scan_then_golden_min([&](double x) { return -f(x); }, lo, hi, scan_points, iters, log_scale);
    r.value = -r.value;
    return r;
}

namespace {

double simpson(double fa, double fm, double fb, double h) { return (fa + 4.0 * fm + fb) * h / 6.0; }

double simpson_rec(const std::function<double(double)>& f, double a, double m, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, int iters) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw RangeError("bisect_root: no sign change in bracket");
    for (int i = 0; i < iters; ++i) {
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi))) break;
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (n < 1 || !(lo <= hi)) throw RangeError("linear_grid: bad parameters");
    std::vector<double> g(static_cast<std::size_t>(n));
    if (n == 1) {
        g[0] = lo;
        return g;
    }
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return g;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (lo <= 0.0 || hi < lo) throw RangeError("log_grid: bad parameters");
    auto g = linear_grid(std::log(lo), std::log(hi), n);
    for (double& x : g) x = std::exp(x);
    if (!g.empty()) {
        g.front() = lo;
        g.back() = hi;
    }
    return g;
}

std::vector<double> geometric_times(double t_min, double t_max, int points_per_decade) {
    if (t_min <= 0.0 || t_max < t_min || points_per_decade < 1)
        throw RangeError("geometric_times: bad parameters");
    const double decades = std::log10(t_max / t_min);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
    return log_grid(t_min, t_max, n);
}

}  // namespace hyporate::num
