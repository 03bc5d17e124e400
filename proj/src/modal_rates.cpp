#include "hyporate/modal_rates.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "hyporate/numerics.hpp"

namespace hyporate {

namespace {

const double kSqrt3 = std::sqrt(3.0);
constexpr double kTriangleMargin = 1e-12;
constexpr int kDeltaScanPoints = 512;
constexpr int kOuterBisections = 60;

void require_positive(double s) {
    if (!(s > 0.0)) throw RangeError("frequency modulus must be positive, got " + std::to_string(s));
}

}  // namespace

AbstractConstants constants_of_mode(double s) {
    require_positive(s);
    return {1.0, s * s, s * (1.0 + kSqrt3 * s) / (1.0 + s * s)};
}

double equivalence_ratio(double s, double delta) {
    const double denom = 1.0 + s * s - delta * s;
    if (!(denom > 0.0)) throw RangeError("equivalence_ratio: twist too large for this mode");
    return (1.0 + s * s + delta * s) / denom;
}

RatePoint coarse_rate(double s) {
    require_positive(s);
    const double w = 1.0 + kSqrt3 * s;
    RatePoint p;
    p.s = s;
    p.lambda = s * s / (3.0 * w * w);
    p.delta = 0.5 * (1.0 + s * s) / (w * w);
    p.C_of_s = equivalence_ratio(s, p.delta);
    return p;
}

double disc_abstract(double delta, double lambda, double s) {
    return h_star(delta, lambda, constants_of_mode(s));
}

double disc_mode(double delta, double lambda, double s) {
    const double q = s * s / (1.0 + s * s);
    const double a = delta * s * (1.0 + kSqrt3 * s + lambda) / (1.0 + s * s);
    return a * a - 4.0 * (1.0 - delta * q - 0.5 * lambda) * (delta * q - 0.5 * lambda);
}

double disc_closed_form(double delta, double lambda, double s) {
    const double q = s * s / (1.0 + s * s);
    const double a = delta * s * (1.0 + kSqrt3 * s) / (1.0 + s * s);
    const double half = 0.5 * lambda * (1.0 + delta * s / (1.0 + s * s));
    return a * a - 4.0 * (1.0 - delta * q - half) * (delta * q - half);
}

double disc_scaled(double delta, double lambda, double eps, double s) {
    const double w = eps * eps + s * s;
    const double q = s * s / w;
    const double a = delta * s * (1.0 + kSqrt3 * s + lambda) / w;
    return a * a - 4.0 * (1.0 - delta * q - 0.5 * lambda) * (delta * q - 0.5 * lambda);
}

double closed_form_rate(double s) {
    require_positive(s);
    const double root = std::sqrt(21.0 * s * s * s * s + 4.0 * (3.0 + 5.0 * kSqrt3) * s * s * s +
                                  (22.0 + 8.0 * kSqrt3) * s * s + 4.0 * (1.0 + kSqrt3) * s + 1.0);
    return (7.0 * s * s - root + 2.0 * (1.0 + kSqrt3) * s + 1.0) /
           (7.0 * s * s + 2.0 * (2.0 + kSqrt3) * s + 2.0);
}

double closed_form_delta(double s) {
    require_positive(s);
    const double l = closed_form_rate(s);
    return (s * s + 1.0) / s * (l * l - l + 2.0 * s) /
           (7.0 * s * s + 2.0 * kSqrt3 * s + 1.0 - l * l);
}

namespace {

// Feasibility of a rate lambda: is there a twist delta strictly inside
// (0, delta_cap) with h(delta) <= 0? h is quadratic in delta, so a scan plus
// golden refinement around the best cell resolves the (possibly tiny)
// feasible interval. Returns the minimizing delta through *arg.
bool twist_feasible(const std::function<double(double)>& h, double delta_cap, double* arg) {
    if (!(delta_cap > 0.0)) return false;
    const double lo = kTriangleMargin * delta_cap;
    const double hi = delta_cap * (1.0 - kTriangleMargin);
    const auto best = num::scan_then_golden_min(h, lo, hi, kDeltaScanPoints, 60);
    if (arg) *arg = best.x;
    return best.value <= 0.0;
}

struct TriangleProblem {
    std::function<double(double, double)> h;          // (delta, lambda)
    std::function<double(double)> delta_cap;          // cap(lambda)
    double eps = 1.0;  // scaling of the norm-equivalence constant
};

RatePoint optimize_in_triangle(const TriangleProblem& problem, double s) {
    double lambda_lo = 1e-12;
    double lambda_hi = 2.0;
    double delta_at_lo = 0.0;
    auto feasible = [&](double lambda, double* arg) {
        return twist_feasible([&](double d) { return problem.h(d, lambda); },
                              problem.delta_cap(lambda), arg);
    };
    if (!feasible(lambda_lo, &delta_at_lo))
        throw InfeasibleMode("optimize_mode_rate: no feasible twist at s = " + std::to_string(s));
    for (int i = 0; i < kOuterBisections; ++i) {
        const double mid = 0.5 * (lambda_lo + lambda_hi);
        double arg = 0.0;
        if (feasible(mid, &arg)) {
            lambda_lo = mid;
            delta_at_lo = arg;
        } else {
            lambda_hi = mid;
        }
    }
    RatePoint p;
    p.s = s;
    p.lambda = lambda_lo;
    p.delta = delta_at_lo;
    const double w = problem.eps * problem.eps + s * s;
    if (!(w - p.delta * s > 0.0))
        throw InfeasibleMode("optimize_mode_rate: twist breaks the norm equivalence");
    p.C_of_s = (w + p.delta * s) / (w - p.delta * s);
    return p;
}

}  // namespace

RatePoint optimize_mode_rate(RateVariant variant, double s, double eps) {
    require_positive(s);
    switch (variant) {
        case RateVariant::coarse:
            return coarse_rate(s);
        case RateVariant::closed_form: {
            RatePoint p;
            p.s = s;
            p.lambda = closed_form_rate(s);
            p.delta = closed_form_delta(s);
            p.C_of_s = equivalence_ratio(s, p.delta);
            return p;
        }
        case RateVariant::abstract_opt: {
            TriangleProblem problem;
            problem.h = [s](double d, double l) { return disc_abstract(d, l, s); };
            problem.delta_cap = [](double l) { return std::min(1.0, 1.0 - 0.5 * l); };
            return optimize_in_triangle(problem, s);
        }
        case RateVariant::mode_opt: {
            TriangleProblem problem;
            problem.h = [s](double d, double l) { return disc_mode(d, l, s); };
            problem.delta_cap = [s](double l) { return (1.0 - 0.5 * l) * (1.0 + s * s) / (s * s); };
            return optimize_in_triangle(problem, s);
        }
        case RateVariant::scaled: {
            if (!(eps > 0.0)) throw RangeError("optimize_mode_rate: eps must be positive");
            TriangleProblem problem;
            problem.h = [s, eps](double d, double l) { return disc_scaled(d, l, eps, s); };
            problem.delta_cap = [s, eps](double l) {
                return (1.0 - 0.5 * l) * (eps * eps + s * s) / (s * s);
            };
            RatePoint p = optimize_in_triangle(problem, s);
            // Norm equivalence of the scaled family carries eps^2 in place
            // of 1; the unscaled formula can be undefined for these twists.
            const double w = eps * eps + s * s;
            p.C_of_s = (w + p.delta * s) / (w - p.delta * s);
            return p;
        }
    }
    throw RangeError("optimize_mode_rate: unknown variant");
}

RateCurve rate_curve(RateVariant variant, std::span<const double> s_grid, double eps, Exec exec) {
    RateCurve curve;
    curve.variant = variant;
    curve.eps = eps;
    curve.points = map_indexed<RatePoint>(s_grid.size(), exec, [&](std::size_t i) {
        return optimize_mode_rate(variant, s_grid[i], eps);
    });
    return curve;
}

namespace {

// The parabolically scaled discriminant is quadratic in delta with positive
// leading coefficient; feasibility reduces to its minimum over the admissible
// interval, evaluated in closed form. The twist collapses to O(eps) as
// eps -> 0, far below any fixed scan grid.
struct ScaledQuadratic {
    double A, B, C;
    double delta_lo, delta_hi;
};

ScaledQuadratic diffusion_quadratic(double lambda, double eps, double s) {
    const double q = s * s / (1.0 + s * s);
    const double p = 1.0 / eps - 0.5 * lambda * eps;
    const double r = 0.5 * lambda * eps;
    const double a1_lin = (s / eps) * (1.0 + kSqrt3 * eps * s + lambda * eps * eps) / (1.0 + s * s);
    ScaledQuadratic out;
    out.A = a1_lin * a1_lin + 4.0 * q * q;
    out.B = -4.0 * q * (p + r);
    out.C = 4.0 * p * r;
    out.delta_lo = r / q;
    out.delta_hi = p / q;
    return out;
}

bool diffusion_feasible(double lambda, double eps, double s, double* arg) {
    const auto quad = diffusion_quadratic(lambda, eps, s);
    if (!(quad.delta_lo < quad.delta_hi)) return false;
    const double pad = kTriangleMargin * (quad.delta_hi - quad.delta_lo);
    const double lo = quad.delta_lo + pad;
    const double hi = quad.delta_hi - pad;
    auto value = [&](double d) { return (quad.A * d + quad.B) * d + quad.C; };
    double best_d = lo;
    double best = value(lo);
    if (value(hi) < best) {
        best = value(hi);
        best_d = hi;
    }
    if (quad.A > 0.0) {
        const double v = -0.5 * quad.B / quad.A;
        if (lo < v && v < hi && value(v) < best) {
            best = value(v);
            best_d = v;
        }
    }
    if (arg) *arg = best_d;
    return best <= 0.0;
}

}  // namespace

std::vector<DiffusionPoint> diffusion_limit_rate(double s, std::span<const double> eps_grid) {
    require_positive(s);
    std::vector<DiffusionPoint> out;
    out.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        if (!(eps > 0.0)) throw RangeError("diffusion_limit_rate: eps must be positive");
        double hi = 4.0 * s * s + 2.0;
        while (diffusion_feasible(hi, eps, s, nullptr)) hi *= 2.0;
        double lo = 1e-12;
        double arg = 0.0;
        if (!diffusion_feasible(lo, eps, s, &arg))
            throw InfeasibleMode("diffusion_limit_rate: no feasible twist");
        for (int i = 0; i < 2 * kOuterBisections; ++i) {
            const double mid = 0.5 * (lo + hi);
            double a = 0.0;
            if (diffusion_feasible(mid, eps, s, &a)) {
                lo = mid;
                arg = a;
            } else {
                hi = mid;
            }
        }
        out.push_back({eps, lo, arg});
    }
    return out;
}

double disc_gt(double delta, double lambda, double xi) {
    const double q = xi * xi / (1.0 + xi * xi);
    const double a = delta * xi * (1.0 - lambda) / (1.0 + xi * xi);
    return a * a - 4.0 * (1.0 - delta * q - 0.5 * lambda) * (delta * q - 0.5 * lambda);
}

GtSharpRate gt_sharp_rate(double xi) {
    if (xi == 0.0) throw RangeError("gt_sharp_rate: xi must be nonzero");
    return {(1.0 + xi * xi) / (2.0 * xi * xi), 1.0};
}

}  // namespace hyporate
