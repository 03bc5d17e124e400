#pragma once

#include <functional>
#include <utility>

#include "hyporate/errors.hpp"

namespace hyporate {

// Ingredients of the frequency-split decay machinery on R^d: a positive
// nondecreasing bounded rate function, a bounded constant function >= 1, and
// the two norms of the initial datum it applies to.
struct NashProfile {
    int d = 1;
    std::function<double(double)> rate_fn;    // s -> lambda(s)
    std::function<double(double)> const_fn;   // s -> C(s) >= 1
    double mass = 1.0;                        // L1-type norm M
    double l2_norm = 1.0;                     // L2-type norm Q
    // Optional closed form for sup_{s >= R} C(s); a scan-based fallback is
    // used when absent.
    std::function<double(double)> sup_const_tail;

    double omega_d() const;  // unit-ball volume pi^{d/2} / Gamma(d/2 + 1)
    double sup_const_from(double r) const;
};

// lambda(R) (omega_d R^d M^2 - s)
double nash_h(double mass, double r, double s, const NashProfile& profile);

// -min_{R>0} nash_h; positive for all (M, s).
double rate_envelope(double mass, double s, const NashProfile& profile);

// psi(s) = -int_1^s dz / rate_envelope(M, z), monotone decreasing,
// divergent at 0+.
double psi(double s, const NashProfile& profile);

// Inverse of psi by bisection on a geometrically grown bracket.
double psi_inverse(double y, const NashProfile& profile);

// Decay along the coercivity estimate: psi^{-1}(t + psi(y0_sq)).
double nash_decay(double t, double y0_sq, const NashProfile& profile);

struct EnvelopeSample {
    double t = 0.0;
    double bound = 0.0;
    double argmin_R = 0.0;
    bool at_boundary = false;
};

// Frequency-split envelope: inf over R of the low-frequency mass term plus
// the high-frequency exponential tail.
EnvelopeSample psi_envelope(double t, const NashProfile& profile,
                            std::pair<double, double> r_bracket);

// Two-velocity model on the line (relaxation rate 1): piecewise modal
// constants and rates for a split radius R in (0, 1/2).
std::pair<double, double> gt_line_modal_bound(double xi, double r);

// Global line bound; optionally reports the minimizing split radius.
double gt_line_global_bound(double t, double y0_l1_sq, double y0_l2_sq,
                            EnvelopeSample* detail = nullptr);

// Variant built on the smooth line family; slightly less precise but with a
// simple spatial representation.
double gt_line_ptilde_bound(double t, double y0_l1_sq, double y0_l2_sq,
                            EnvelopeSample* detail = nullptr);

// sqrt(t) * int_0^R e^{-2 mu(s) t} ds, always below sqrt(pi/8).
double gt_line_B(double t, double r);

// mu~(xi) / xi^2; equals 1 at 0 and at (sqrt(5)-1)/4, and stays >= 1 between.
double alpha_ratio(double xi);

// Exponential rate on a small torus of side L: min{2, lambda_cap - eps} once
// every represented mode clears the cap, with prefactor 1 + eps; the honest
// per-mode floor and constant otherwise.
struct TorusRate {
    double rate = 0.0;
    double mult_const = 1.0;
    bool at_cap = false;  // true when the (lambda_cap - eps, 1 + eps) pair applies
};
TorusRate torus_small_L_rate(double length, double eps);

// Asymptotic rate cap of the closed-form curve, 1 - sqrt(3/7).
double torus_rate_cap();

}  // namespace hyporate
