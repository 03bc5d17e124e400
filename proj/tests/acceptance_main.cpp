// Acceptance suite: end-to-end checks of the certified rates, certificates,
// simulators and bounds at pinned tolerances. Prints one PASS/FAIL line per
// criterion and exits with the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyporate/decay_bounds.hpp"
#include "hyporate/gt_sim.hpp"
#include "hyporate/modal_rates.hpp"
#include "hyporate/numerics.hpp"
#include "hyporate/spectral_lyapunov.hpp"

using namespace hyporate;

namespace {

int failures = 0;

struct Criterion {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

void report(int index, const std::string& name, const Criterion& c, double seconds) {
    std::printf("[%s] %2d. %-58s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", index, name.c_str(),
                seconds, c.ok ? "" : " -- ", c.detail.c_str());
    if (!c.ok) ++failures;
}

void run(int index, const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(index, name, c, seconds);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

int main() {
    // 1. Closed-form limits of the explicit rate/twist pair.
    run(1, "closed-form limits of the explicit curve", [](Criterion& c) {
        const auto start = std::chrono::steady_clock::now();
        const double cap = 1.0 - std::sqrt(3.0 / 7.0);
        c.require(std::abs(closed_form_rate(1e6) - cap) <= 1e-5,
                  "rate(1e6) = " + fmt6(closed_form_rate(1e6)));
        c.require(std::abs(closed_form_delta(1e6) - 2.0 / 7.0) <= 1e-4,
                  "delta(1e6) = " + fmt6(closed_form_delta(1e6)));
        c.require(rel_err(closed_form_rate(1e-4) / 1e-8, 2.0) <= 0.002,
                  "rate(1e-4)/1e-8 = " + fmt6(closed_form_rate(1e-4) / 1e-8));
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(seconds < 1.0, "runtime " + fmt6(seconds) + "s exceeds 1s");
    });

    // 2. Discriminant residual of the closed forms over the log grid.
    run(2, "closed forms zero the relaxed discriminant (400 pts)", [](Criterion& c) {
        const auto start = std::chrono::steady_clock::now();
        for (double s : num::log_grid(1e-3, 1e3, 400)) {
            const double res = disc_closed_form(closed_form_delta(s), closed_form_rate(s), s);
            c.require(std::abs(res) <= 1e-9, "residual " + fmt6(res) + " at s = " + fmt6(s));
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(seconds < 1.0, "runtime " + fmt6(seconds) + "s exceeds 1s");
    });

    // 3. Dominance chain and the figure-2 improvement band.
    run(3, "dominance chain and lambda2/lambda0 in [4,6] for s >= 10", [](Criterion& c) {
        const auto grid = num::log_grid(1e-3, 1e3, 400);
        const auto coarse = rate_curve(RateVariant::coarse, grid);
        const auto abstract_opt = rate_curve(RateVariant::abstract_opt, grid);
        const auto mode_opt = rate_curve(RateVariant::mode_opt, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double l0 = coarse.points[i].lambda;
            const double l1 = abstract_opt.points[i].lambda;
            const double l2 = mode_opt.points[i].lambda;
            const double lt = closed_form_rate(grid[i]);
            c.require(l0 <= l1 * (1.0 + 1e-9), "lambda0 > lambda1 at s = " + fmt6(grid[i]));
            c.require(l1 <= l2 * (1.0 + 1e-9), "lambda1 > lambda2 at s = " + fmt6(grid[i]));
            c.require(lt <= l2 * (1.0 + 1e-9), "lambda2_tilde > lambda2 at s = " + fmt6(grid[i]));
            if (grid[i] >= 10.0) {
                const double ratio = l2 / l0;
                c.require(ratio >= 4.0 && ratio <= 6.0,
                          "lambda2/lambda0 = " + fmt6(ratio) + " at s = " + fmt6(grid[i]));
            }
        }
    });

    // 4. The scaled family yields an eps-independent optimum.
    run(4, "scaling invariance of the optimized rate (50 pts)", [](Criterion& c) {
        for (double s : num::log_grid(1e-2, 1e2, 50)) {
            const double reference = optimize_mode_rate(RateVariant::mode_opt, s).lambda;
            for (double eps : {0.1, 1.0, 10.0}) {
                const double scaled = optimize_mode_rate(RateVariant::scaled, s, eps).lambda;
                c.require(std::abs(scaled - reference) <= 1e-8,
                          "gap " + fmt6(std::abs(scaled - reference)) + " at s = " + fmt6(s) +
                              ", eps = " + fmt6(eps));
            }
        }
    });

    // 5. Parabolic-scaling limit of rate and twist.
    run(5, "diffusion limit: rate -> 2 s^2, twist ~ 2 (1+s^2) eps", [](Criterion& c) {
        const std::vector<double> eps_grid{1e-4};
        for (double s : {0.2, 0.5, 1.0}) {
            const auto pts = diffusion_limit_rate(s, eps_grid);
            c.require(rel_err(pts[0].lambda, 2.0 * s * s) <= 0.01,
                      "rate " + fmt6(pts[0].lambda) + " at s = " + fmt6(s));
            const double twist_ratio = pts[0].delta / (2.0 * (1.0 + s * s) * pts[0].eps);
            c.require(std::abs(twist_ratio - 1.0) <= 0.02,
                      "twist ratio " + fmt6(twist_ratio) + " at s = " + fmt6(s));
        }
    });

    // 6. Matrix-inequality certification across families and modes.
    run(6, "deformation families: residuals and condition numbers", [](Criterion& c) {
        for (double sigma : {0.5, 1.0, 3.0, 4.0, 7.0}) {
            const double theta = theta_of_sigma(sigma);
            const double mu_bar = uniform_gap(sigma).mu_bar;
            for (int xi = 1; xi <= 256; ++xi) {
                // Sharp families in their domains.
                if (xi > 0.5 * sigma) {
                    const auto p = gt_P_family(xi, sigma, PFamily::sharp_high);
                    const double res =
                        inequality_residual(p.P, gt_matrix(xi, sigma), p.certified_rate);
                    c.require(res >= -1e-9, "sharp_high residual " + fmt6(res));
                    const double cond = condition_number(p.P);
                    const double formula = (2.0 * xi + sigma) / (2.0 * xi - sigma);
                    c.require(std::abs(cond - formula) <= 1e-12 * formula,
                              "sharp_high cond at xi=" + fmt6(xi) + ", sigma=" + fmt6(sigma));
                } else if (xi < 0.5 * sigma) {
                    const auto p = gt_P_family(xi, sigma, PFamily::sharp_low);
                    const double res =
                        inequality_residual(p.P, gt_matrix(xi, sigma), p.certified_rate);
                    c.require(res >= -1e-9, "sharp_low residual " + fmt6(res));
                    const double cond = condition_number(p.P);
                    const double formula = (sigma + 2.0 * xi) / (sigma - 2.0 * xi);
                    c.require(std::abs(cond - formula) <= 1e-12 * formula,
                              "sharp_low cond at xi=" + fmt6(xi) + ", sigma=" + fmt6(sigma));
                }
                // Uniform family everywhere.
                const auto pbar = gt_P_family(xi, sigma, PFamily::global_theta);
                const double res_bar =
                    inequality_residual(pbar.P, gt_matrix(xi, sigma), 2.0 * mu_bar);
                c.require(res_bar >= -1e-9, "uniform-family residual " + fmt6(res_bar));
                const double cond_bar = condition_number(pbar.P);
                const double formula_bar = (2.0 * xi + theta) / (2.0 * xi - theta);
                c.require(std::abs(cond_bar - formula_bar) <= 1e-12 * formula_bar,
                          "uniform-family cond at xi=" + fmt6(xi) + ", sigma=" + fmt6(sigma));
                // Smooth line family (relaxation rate 1).
                if (sigma == 1.0) {
                    const auto pt = gt_P_family(xi, 1.0, PFamily::line_tilde);
                    const double res_t =
                        inequality_residual(pt.P, gt_matrix(xi, 1.0), pt.certified_rate);
                    c.require(res_t >= -1e-9, "line-family residual " + fmt6(res_t));
                    const double cond_t = condition_number(pt.P);
                    const double formula_t = (1.0 + 2.0 * xi + 4.0 * xi * xi) /
                                             (1.0 - 2.0 * xi + 4.0 * xi * xi);
                    c.require(std::abs(cond_t - formula_t) <= 1e-12 * formula_t,
                              "line-family cond at xi=" + fmt6(xi));
                }
            }
        }
        const double cond_half =
            condition_number(gt_P_family(0.5, 1.0, PFamily::line_tilde).P);
        c.require(std::abs(cond_half - 3.0) <= 1e-12, "cond at 1/2 is " + fmt6(cond_half));
    });

    // 7. Sharp decay of torus trajectories, worst-case sharpness, defective case.
    run(7, "torus decay: sharp envelope, sharpness, defective case", [](Criterion& c) {
        GTSystem sys1{1.0, GTSystem::Domain::torus};
        const DecayCertificate cert = assemble_strategy2(sys1, 32);
        const auto times = num::geometric_times(1e-2, 50.0, 40);
        std::mt19937_64 rng(2024);
        for (int rep = 0; rep < 100; ++rep) {
            TorusField y0 = TorusField::random(16, rng());
            y0.mode(0)[0] = 0.0;
            const auto report = verify_certificate(cert, simulate_torus(y0, 1.0, times));
            c.require(report.pass, "envelope violated, ratio " + fmt6(report.max_ratio));
        }
        const double peak = worst_case_peak_ratio(cert, 1, 1.0, times);
        c.require(peak >= 0.9, "worst-case ratio " + fmt6(peak) + " below 0.9");
        c.require(peak <= 1.0 + 1e-9, "worst-case ratio " + fmt6(peak) + " above 1");

        GTSystem sys2{2.0, GTSystem::Domain::torus};
        const DecayCertificate eps_cert = assemble_strategy2(sys2, 32, 0.1);
        const auto long_times = num::geometric_times(1e-2, 1e3, 25);
        const TorusField defective = TorusField::worst_case(8, 1, 2.0);
        const Trajectory traj = simulate_torus(defective, 2.0, long_times);
        c.require(verify_certificate(eps_cert, traj).pass, "eps-certificate violated");
        DecayCertificate no_sacrifice = eps_cert;
        no_sacrifice.rate = 2.0;
        c.require(verify_certificate(no_sacrifice, traj).pass == false,
                  "rate-2 envelope unexpectedly holds for defective data");
    });

    // 8. The two global functional assemblies coincide; Parseval consistency.
    run(8, "twisted-functional equality and Parseval check", [](Criterion& c) {
        std::mt19937_64 rng(515);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const int n = 16;
        for (double sigma : {0.5, 1.0, 3.0, 5.0}) {
            const double theta = theta_of_sigma(sigma);
            std::vector<cplx> u(static_cast<std::size_t>(2 * n + 1));
            std::vector<cplx> v(static_cast<std::size_t>(2 * n + 1));
            for (int xi = 1; xi <= n; ++xi) {
                const cplx zu(gauss(rng), gauss(rng));
                const cplx zv(gauss(rng), gauss(rng));
                u[static_cast<std::size_t>(xi + n)] = zu;
                u[static_cast<std::size_t>(-xi + n)] = std::conj(zu);
                v[static_cast<std::size_t>(xi + n)] = zv;
                v[static_cast<std::size_t>(-xi + n)] = std::conj(zv);
            }
            v[static_cast<std::size_t>(n)] = gauss(rng);
            // Assembly via the abstract modal functionals, doubled.
            double h1_total = std::norm(v[static_cast<std::size_t>(n)]);
            for (int xi = -n; xi <= n; ++xi) {
                if (xi == 0) continue;
                const cplx uh = u[static_cast<std::size_t>(xi + n)];
                const cplx vh = v[static_cast<std::size_t>(xi + n)];
                const double off = xi * delta_bar(xi, sigma) / (1.0 + xi * xi);
                h1_total += std::norm(uh) + std::norm(vh) +
                            2.0 * (cplx(0.0, -off) * vh * std::conj(uh)).real();
            }
            const double h2_total = entropy_theta(u, v, theta);
            c.require(std::abs(h1_total - h2_total) <=
                          1e-12 * std::max(1.0, std::abs(h2_total)),
                      "assemblies differ by " + fmt6(h1_total - h2_total));
            // Modal sum vs spatial quadrature of the twisted functional.
            const int grid = 8192;
            double spatial = 0.0;
            for (int g = 0; g < grid; ++g) {
                const double x = 2.0 * M_PI * g / grid;
                cplx uu{}, vv{}, anti{};
                for (int xi = -n; xi <= n; ++xi) {
                    const cplx wave = std::polar(1.0, xi * x);
                    if (xi != 0) {
                        uu += u[static_cast<std::size_t>(xi + n)] * wave;
                        anti += u[static_cast<std::size_t>(xi + n)] * wave /
                                cplx(0.0, static_cast<double>(xi));
                    }
                    vv += v[static_cast<std::size_t>(xi + n)] * wave;
                }
                spatial += std::norm(uu) + std::norm(vv) - theta * (std::conj(vv) * anti).real();
            }
            spatial /= grid;
            c.require(std::abs(spatial - h2_total) <= 1e-10 * std::max(1.0, std::abs(h2_total)),
                      "Parseval gap " + fmt6(spatial - h2_total));
        }
    });

    // 9. Refined discriminant of the two-velocity model and the s = 1 values.
    run(9, "refined discriminant closes at the sharp rate; s = 1 values", [](Criterion& c) {
        for (int xi = 1; xi <= 10; ++xi) {
            const GtSharpRate sharp = gt_sharp_rate(xi);
            const double res = disc_gt(sharp.delta_bar, sharp.lambda, xi);
            c.require(std::abs(res) <= 1e-14, "residual " + fmt6(res) + " at xi = " + fmt6(xi));
            c.require(sharp.lambda == 1.0, "rate is not 1");
        }
        c.require(std::abs(closed_form_rate(1.0) - 0.165) <= 0.005,
                  "rate(1) = " + fmt6(closed_form_rate(1.0)));
        c.require(std::abs(closed_form_delta(1.0) - 0.325) <= 0.005,
                  "delta(1) = " + fmt6(closed_form_delta(1.0)));
    });

    // 10. Whole-space decay: heat closed form, line envelope, B bound.
    run(10, "whole-space decay: heat closed form, line envelope and band", [](Criterion& c) {
        NashProfile heat;
        heat.d = 1;
        heat.rate_fn = [](double s) {
            const double z = std::min(s, 1.0);
            return 2.0 * z * z;
        };
        heat.const_fn = [](double) { return 1.0; };
        heat.sup_const_tail = [](double) { return 1.0; };
        heat.mass = 1.0;
        heat.l2_norm = 1.0;
        const double cd = 0.5 * std::pow(1.5, 3.0) * std::pow(2.0, 2.0);  // d = 1
        for (double t : {0.1, 1.0, 10.0, 100.0}) {
            const double expected = std::pow(1.0 + t / cd, -0.5);
            const double got = nash_decay(t, 1.0, heat);
            c.require(rel_err(got, expected) <= 1e-8,
                      "heat decay " + fmt6(got) + " vs " + fmt6(expected) + " at t = " + fmt6(t));
        }

        const LineField y0 = LineField::gaussian();
        const double q_sq = y0.norm_sq();
        const auto times = num::log_grid(10.0, 1e3, 25);
        const Trajectory traj = simulate_line(y0, 1.0, times);
        double lo = 1e300, hi = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double bound = gt_line_global_bound(times[i], 1.0, q_sq);
            c.require(traj.norm_sq[i] <= bound * (1.0 + 1e-6),
                      "envelope violated at t = " + fmt6(times[i]));
            const double scaled = traj.norm_sq[i] * std::sqrt(times[i]);
            lo = std::min(lo, scaled);
            hi = std::max(hi, scaled);
        }
        c.require(lo > 0.0 && hi / lo <= 10.0, "band ratio " + fmt6(hi / lo));

        const double cap = std::sqrt(M_PI / 8.0);
        for (double t : num::log_grid(1e-2, 1e4, 15))
            for (double r : {0.05, 0.25, 0.45, 0.499})
                c.require(gt_line_B(t, r) < cap, "B out of range at t = " + fmt6(t));
    });

    // 11. Continuity and sharpness of the squared propagator norm.
    run(11, "propagator norm: continuity at the defective point, sharpness", [](Criterion& c) {
        for (double t : {1.0, 5.0, 10.0}) {
            const double mid = propagator_norm_sq(0.5, 1.0, t);
            c.require(std::abs(propagator_norm_sq(0.5 - 1e-6, 1.0, t) - mid) <= 1e-4,
                      "left continuity gap at t = " + fmt6(t));
            c.require(std::abs(propagator_norm_sq(0.5 + 1e-6, 1.0, t) - mid) <= 1e-4,
                      "right continuity gap at t = " + fmt6(t));
        }
        std::mt19937_64 rng(77);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (double xi : num::log_grid(0.05, 8.0, 20)) {
            for (double t : {0.5, 1.0, 3.0, 10.0}) {
                const double h = propagator_norm_sq(xi, 1.0, t);
                for (int rep = 0; rep < 10; ++rep) {
                    std::array<cplx, 2> y0{cplx(gauss(rng), gauss(rng)),
                                           cplx(gauss(rng), gauss(rng))};
                    const double n0 = std::norm(y0[0]) + std::norm(y0[1]);
                    const auto yt = propagate_mode({xi, y0}, 1.0, t).uv;
                    const double nt = std::norm(yt[0]) + std::norm(yt[1]);
                    c.require(nt <= h * n0 * (1.0 + 1e-10),
                              "ratio above propagator norm at xi = " + fmt6(xi));
                }
                const auto top = worst_modal_direction(xi, 1.0, t);
                const auto yt = propagate_mode({xi, top}, 1.0, t).uv;
                const double attained =
                    (std::norm(yt[0]) + std::norm(yt[1])) /
                    (std::norm(top[0]) + std::norm(top[1]));
                c.require(std::abs(attained - h) <= 1e-10 * std::max(1.0, h),
                          "top direction misses the norm at xi = " + fmt6(xi));
            }
        }
    });

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures;
}
