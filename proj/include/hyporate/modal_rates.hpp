#pragma once

#include <span>
#include <vector>

#include "hyporate/abstract_rates.hpp"
#include "hyporate/parallel.hpp"

namespace hyporate {

// One optimized point of a rate curve at frequency modulus s, together with
// the squared-norm equivalence constant C(s) of the twisted norm.
struct RatePoint {
    double s = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    double C_of_s = 1.0;
};

// The five certified rate curves, ordered by sharpness of the estimate they
// come from: the coarse minimum formula, the optimized abstract discriminant,
// the mode-specific discriminant, its explicit closed-form relaxation, and
// the scaled family (which reproduces the mode-specific curve for every
// scaling parameter).
enum class RateVariant { coarse, abstract_opt, mode_opt, closed_form, scaled };

struct RateCurve {
    RateVariant variant = RateVariant::mode_opt;
    double eps = 1.0;  // only meaningful for RateVariant::scaled
    std::vector<RatePoint> points;
};

// Constants of the Gaussian-equilibrium mode of frequency modulus s:
// (1, s^2, s (1 + sqrt(3) s) / (1 + s^2)).
AbstractConstants constants_of_mode(double s);

// Twisted-norm equivalence constant (1 + s^2 + delta s) / (1 + s^2 - delta s).
double equivalence_ratio(double s, double delta);

// Coarse baseline: lambda = s^2 / (3 (1 + sqrt(3) s)^2),
// delta = (1 + s^2) / (2 (1 + sqrt(3) s)^2).
RatePoint coarse_rate(double s);

// Discriminants whose nonpositivity certifies the rate lambda at twist delta.
double disc_abstract(double delta, double lambda, double s);                // in T_m
double disc_mode(double delta, double lambda, double s);                    // in T_m(s)
double disc_closed_form(double delta, double lambda, double s);             // relaxed variant
double disc_scaled(double delta, double lambda, double eps, double s);      // in T_m^eps(s)

// Closed forms solving the relaxed discriminant exactly.
double closed_form_rate(double s);
double closed_form_delta(double s);

// Largest rate with a feasible twist in the variant's triangle, by outer
// bisection on lambda with a grid-and-refine feasibility scan over delta.
RatePoint optimize_mode_rate(RateVariant variant, double s, double eps = 1.0);

RateCurve rate_curve(RateVariant variant, std::span<const double> s_grid, double eps = 1.0,
                     Exec exec = Exec::parallel);

// Parabolic-scaling family: optimized (lambda_eps, delta_eps) per eps; as
// eps -> 0 the rate tends to 2 s^2 and delta_eps ~ 2 (1 + s^2) eps.
struct DiffusionPoint {
    double eps = 0.0;
    double lambda = 0.0;
    double delta = 0.0;
};
std::vector<DiffusionPoint> diffusion_limit_rate(double s, std::span<const double> eps_grid);

// Two-velocity refinement (relaxation rate normalized to 1): discriminant and
// the twist that certifies the sharp modal rate 1.
double disc_gt(double delta, double lambda, double xi);
struct GtSharpRate {
    double delta_bar = 0.0;
    double lambda = 1.0;
};
GtSharpRate gt_sharp_rate(double xi);

}  // namespace hyporate
