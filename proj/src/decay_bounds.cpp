#include "hyporate/decay_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyporate/modal_rates.hpp"
#include "hyporate/numerics.hpp"
#include "hyporate/spectral_lyapunov.hpp"

namespace hyporate {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr int kQuadDepth = 40;
constexpr double kLineBracketLo = 1e-6;
constexpr double kLineBracketHi = 0.5 - 1e-9;

// Sharp modal gap of the normalized two-velocity model on |xi| <= 1/2.
double mu_line(double s) {
    if (s >= 0.5) return 0.5;
    return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * s * s));
}

void check_rate_monotone(const NashProfile& profile, double lo, double hi) {
    const auto grid = num::log_grid(std::max(lo, 1e-9), std::max(hi, 2e-9), 64);
    double prev = profile.rate_fn(grid.front());
    if (!(prev > 0.0)) throw NonMonotoneRate("rate function must be positive");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = profile.rate_fn(grid[i]);
        if (cur < prev * (1.0 - 1e-9))
            throw NonMonotoneRate("rate function decreases near s = " + std::to_string(grid[i]));
        prev = cur;
    }
}

}  // namespace

double NashProfile::omega_d() const {
    return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double NashProfile::sup_const_from(double r) const {
    if (sup_const_tail) return sup_const_tail(r);
    // C is continuous, >= 1 and tends to a limit; scan a wide log grid and
    // refine around the best cell.
    const double hi = std::max(1e4, 100.0 * r);
    const auto best = num::scan_then_golden_max([&](double s) { return const_fn(s); }, r, hi, 128,
                                                60, /*log_scale=*/true);
    return std::max({best.value, const_fn(r), const_fn(hi)});
}

double nash_h(double mass, double r, double s, const NashProfile& profile) {
    return profile.rate_fn(r) * (profile.omega_d() * std::pow(r, profile.d) * mass * mass - s);
}

namespace {

double rate_envelope_impl(double mass, double s, const NashProfile& profile) {
    // The mass term changes sign at r0; the minimum sits below it.
    const double r0 = std::pow(s / (profile.omega_d() * mass * mass), 1.0 / profile.d);
    const auto best = num::golden_min([&](double r) { return nash_h(mass, r, s, profile); },
                                      1e-9 * r0, r0, 60, /*log_scale=*/true);
    return -best.value;
}

}  // namespace

double rate_envelope(double mass, double s, const NashProfile& profile) {
    if (!(mass > 0.0) || !(s > 0.0)) throw RangeError("rate_envelope: mass and s must be positive");
    const double r0 = std::pow(s / (profile.omega_d() * mass * mass), 1.0 / profile.d);
    check_rate_monotone(profile, 1e-9 * r0, r0);
    return rate_envelope_impl(mass, s, profile);
}

double psi(double s, const NashProfile& profile) {
    if (!(s > 0.0)) throw RangeError("psi: s must be positive");
    if (s == 1.0) return 0.0;
    const double z_hi = std::max(s, 1.0);
    const double r0 = std::pow(z_hi / (profile.omega_d() * profile.mass * profile.mass),
                               1.0 / profile.d);
    check_rate_monotone(profile, 1e-9 * r0, r0);
    // Integrate in w = log z: the envelope scales like a power of z, so the
    // substituted integrand is a smooth exponential. The tolerance is scaled
    // by a coarse magnitude estimate since psi(s) grows without bound as
    // s -> 0.
    auto integrand = [&](double w) {
        const double z = std::exp(w);
        return z / rate_envelope_impl(profile.mass, z, profile);
    };
    const double a = std::log(std::min(s, 1.0));
    const double b = std::log(std::max(s, 1.0));
    double coarse = 0.0;
    {
        const int n = 32;
        for (int i = 0; i <= n; ++i) {
            const double w = a + (b - a) * i / n;
            coarse += ((i == 0 || i == n) ? 0.5 : 1.0) * integrand(w);
        }
        coarse *= (b - a) / n;
    }
    const double tol = kQuadTol * std::max(1.0, std::abs(coarse));
    const double value = num::adaptive_simpson(integrand, a, b, tol, kQuadDepth);
    return (s > 1.0) ? -value : value;
}

double psi_inverse(double y, const NashProfile& profile) {
    // psi is decreasing with psi(0+) = +inf; bracket by geometric growth.
    double lo = 1.0, hi = 1.0;
    int guard = 0;
    while (psi(lo, profile) < y) {
        lo *= 0.5;
        if (++guard > 1000 || lo < 1e-300)
            throw NoConvergence("psi_inverse: bracket growth failed (low)");
    }
    guard = 0;
    while (psi(hi, profile) > y) {
        hi *= 2.0;
        if (++guard > 1000 || hi > 1e300)
            throw NoConvergence("psi_inverse: bracket growth failed (high)");
    }
    if (lo == hi) return lo;
    return num::bisect_root([&](double s) { return psi(s, profile) - y; }, lo, hi, 200);
}

double nash_decay(double t, double y0_sq, const NashProfile& profile) {
    if (!(t >= 0.0) || !(y0_sq > 0.0)) throw RangeError("nash_decay: bad arguments");
    return psi_inverse(t + psi(y0_sq, profile), profile);
}

EnvelopeSample psi_envelope(double t, const NashProfile& profile,
                            std::pair<double, double> r_bracket) {
    if (!(t >= 0.0)) throw RangeError("psi_envelope: t must be nonnegative");
    if (!(r_bracket.first > 0.0 && r_bracket.first < r_bracket.second))
        throw RangeError("psi_envelope: bad bracket");
    const double surface = profile.omega_d() * profile.d;  // |S^{d-1}|
    auto objective = [&](double r) {
        const double low = num::adaptive_simpson(
            [&](double s) {
                return profile.const_fn(s) * std::exp(-profile.rate_fn(s) * t) *
                       std::pow(s, profile.d - 1);
            },
            0.0, r, kQuadTol, kQuadDepth);
        const double tail = profile.sup_const_from(r) * std::exp(-profile.rate_fn(r) * t) *
                            profile.l2_norm * profile.l2_norm;
        return low * surface * profile.mass * profile.mass + tail;
    };
    // The objective can develop a second basin near the lower bracket edge
    // (where the bound degenerates to the trivial tail term), so seed the
    // refinement from a scan.
    const auto best = num::scan_then_golden_min(objective, r_bracket.first, r_bracket.second, 96,
                                                60, /*log_scale=*/true);
    return {t, best.value, best.x, best.at_boundary};
}

std::pair<double, double> gt_line_modal_bound(double xi, double r) {
    if (!(r > 0.0 && r < 0.5)) throw RangeError("gt_line_modal_bound: R must lie in (0, 1/2)");
    if (xi == 0.0) throw RangeError("gt_line_modal_bound: xi must be nonzero");
    const double axi = std::abs(xi);
    if (axi < r) return {(1.0 + 2.0 * axi) / (1.0 - 2.0 * axi), 2.0 * mu_line(axi)};
    return {(axi + 2.0 * r * r) / (axi - 2.0 * r * r), 2.0 * mu_line(r)};
}

double gt_line_B(double t, double r) {
    if (!(t >= 0.0) || !(r > 0.0 && r < 0.5)) throw RangeError("gt_line_B: bad arguments");
    const double integral = num::adaptive_simpson(
        [&](double s) { return std::exp(-2.0 * mu_line(s) * t); }, 0.0, r, kQuadTol, kQuadDepth);
    return std::sqrt(t) * integral;
}

double gt_line_global_bound(double t, double y0_l1_sq, double y0_l2_sq, EnvelopeSample* detail) {
    if (!(t >= 0.0)) throw RangeError("gt_line_global_bound: t must be nonnegative");
    auto objective = [&](double r) {
        // B(t, R)/sqrt(t) without the removable singularity at t = 0.
        const double low = num::adaptive_simpson(
            [&](double s) { return std::exp(-2.0 * mu_line(s) * t); }, 0.0, r, kQuadTol, kQuadDepth);
        const double c = (1.0 + 2.0 * r) / (1.0 - 2.0 * r);
        return c * (2.0 * std::min(low, r) * y0_l1_sq +
                    std::exp(-2.0 * mu_line(r) * t) * y0_l2_sq);
    };
    const auto best =
        num::scan_then_golden_min(objective, kLineBracketLo, kLineBracketHi, 96, 60, true);
    if (detail) *detail = {t, best.value, best.x, best.at_boundary};
    return best.value;
}

double alpha_ratio(double xi) {
    if (xi == 0.0) return 1.0;
    return line_rate_tilde(xi) / (xi * xi);
}

double gt_line_ptilde_bound(double t, double y0_l1_sq, double y0_l2_sq, EnvelopeSample* detail) {
    if (!(t >= 0.0)) throw RangeError("gt_line_ptilde_bound: t must be nonnegative");
    const double xi1 = 0.25 * (std::sqrt(5.0) - 1.0);
    auto objective = [&](double r) {
        const double c = (1.0 + 2.0 * r + 4.0 * r * r) / (1.0 - 2.0 * r + 4.0 * r * r);
        const double window = (t > 0.0) ? std::min(2.0 * r, std::sqrt(M_PI / (2.0 * t))) : 2.0 * r;
        return c * window * y0_l1_sq + 3.0 * std::exp(-2.0 * line_rate_tilde(r) * t) * y0_l2_sq;
    };
    const auto best = num::scan_then_golden_min(objective, kLineBracketLo, xi1, 96, 60, true);
    if (detail) *detail = {t, best.value, best.x, best.at_boundary};
    return best.value;
}

double torus_rate_cap() { return 1.0 - std::sqrt(3.0 / 7.0); }

TorusRate torus_small_L_rate(double length, double eps) {
    if (!(length > 0.0)) throw RangeError("torus_small_L_rate: L must be positive");
    const double cap = torus_rate_cap();
    if (!(eps > 0.0) || eps >= cap)
        throw EpsTooLarge("torus_small_L_rate: eps must lie in (0, " + std::to_string(cap) + ")");
    const double s_min = 2.0 * M_PI / length;  // slowest represented mode
    const double rate_floor = closed_form_rate(s_min);
    // The equivalence constant tends to 1 from above at high frequency.
    double sup_c = 1.0;
    {
        const auto grid = num::log_grid(s_min, std::max(1e4, 10.0 * s_min), 256);
        for (double s : grid) sup_c = std::max(sup_c, equivalence_ratio(s, closed_form_delta(s)));
    }
    TorusRate out;
    if (rate_floor >= cap - eps && sup_c <= 1.0 + eps) {
        out.rate = std::min(2.0, cap - eps);
        out.mult_const = 1.0 + eps;
        out.at_cap = true;
    } else {
        // Honest per-mode certificate, never claiming more than the capped
        // rate so the certified rate is monotone as the torus shrinks.
        out.rate = std::min({2.0, rate_floor, cap - eps});
        out.mult_const = sup_c;
        out.at_cap = false;
    }
    return out;
}

}  // namespace hyporate
