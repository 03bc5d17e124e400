// Command-line front end: rate sweeps, certification, simulation, decay
// bounds and figure-data tables, emitted as deterministic CSV/JSON.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyporate/decay_bounds.hpp"
#include "hyporate/gt_sim.hpp"
#include "hyporate/modal_rates.hpp"
#include "hyporate/numerics.hpp"
#include "hyporate/spectral_lyapunov.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace hyporate;

constexpr int kExitConfig = 2;
constexpr int kExitCertification = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
        os << "\n";
    }
}

std::vector<double> make_s_grid(double s_min, double s_max, int points) {
    if (!(s_min > 0.0) || !(s_max >= s_min) || points < 1)
        throw ConfigError("invalid s grid: need 0 < s-min <= s-max and points >= 1");
    return num::log_grid(s_min, s_max, points);
}

std::vector<double> make_time_grid(double t_min, double t_max, int per_decade) {
    if (!(t_min > 0.0) || !(t_max >= t_min) || per_decade < 1)
        throw ConfigError("invalid time grid: need 0 < t-min <= t-max");
    std::vector<double> times{0.0};
    const auto tail = num::geometric_times(t_min, t_max, per_decade);
    times.insert(times.end(), tail.begin(), tail.end());
    return times;
}

// ---------------------------------------------------------------------- rates

int cmd_rates(const std::string& out_path, double s_min, double s_max, int points) {
    const auto grid = make_s_grid(s_min, s_max, points);
    const auto coarse = rate_curve(RateVariant::coarse, grid);
    const auto abs_opt = rate_curve(RateVariant::abstract_opt, grid);
    const auto mode_opt = rate_curve(RateVariant::mode_opt, grid);
    const auto closed = rate_curve(RateVariant::closed_form, grid);
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rows.push_back({grid[i], coarse.points[i].lambda, abs_opt.points[i].lambda,
                        mode_opt.points[i].lambda, closed.points[i].lambda, coarse.points[i].delta,
                        abs_opt.points[i].delta, mode_opt.points[i].delta, closed.points[i].delta});
    }
    Output out(out_path);
    write_csv(out.stream(),
              {"s", "lambda0", "lambda1", "lambda2", "lambda2_tilde", "delta0", "delta1", "delta2",
               "delta2_tilde"},
              rows);
    return 0;
}

// -------------------------------------------------------------------- certify

json certificate_json(const DecayCertificate& cert) {
    json j;
    j["family"] = family_name(cert.family);
    j["xi"] = cert.xi;
    j["sigma"] = cert.sigma;
    j["rate"] = cert.rate;
    j["cond"] = cert.mult_const;
    j["residual"] = cert.residual;
    return j;
}

int cmd_certify(const std::string& out_path, double sigma, std::optional<double> eps, int xi_max) {
    if (!(sigma > 0.0)) throw ConfigError("--sigma must be positive");
    GTSystem system{sigma, GTSystem::Domain::torus};
    const auto s1 = assemble_strategy1(system, xi_max, eps);
    const auto s2 = assemble_strategy2(system, xi_max, eps);
    const auto gap = uniform_gap(sigma);
    const auto reports1 = strategy_mode_reports(system, 1, xi_max, eps);
    const auto reports2 = strategy_mode_reports(system, 2, xi_max, eps);

    json j;
    j["sigma"] = sigma;
    j["mu_bar"] = gap.mu_bar;
    j["slow_modes"] = gap.all_nonzero_modes ? json("all_nonzero") : json(gap.slow_modes);
    if (eps)
        j["eps"] = *eps;
    else
        j["theta"] = theta_of_sigma(sigma);
    j["strategy1"] = {{"rate", s1.rate},
                      {"mult_const", s1.mult_const},
                      {"c_norm", std::sqrt(s1.mult_const)}};
    j["strategy2"] = {{"rate", s2.rate},
                      {"mult_const", s2.mult_const},
                      {"c_norm", std::sqrt(s2.mult_const)}};
    double worst_residual = 0.0;
    json modes = json::array();
    for (const auto* reports : {&reports1, &reports2}) {
        for (const auto& r : *reports) {
            worst_residual = std::min(worst_residual, r.residual);
            if (reports == &reports2) {
                json m;
                m["xi"] = r.xi;
                m["family"] = family_name(r.family);
                m["cond"] = r.cond;
                m["rate"] = r.rate;
                m["residual"] = r.residual;
                modes.push_back(std::move(m));
            }
        }
    }
    j["modes"] = std::move(modes);
    j["worst_residual"] = worst_residual;
    Output out(out_path);
    out.stream() << j.dump(2) << "\n";
    if (worst_residual < -kCertTol) {
        std::cerr << "certification failure: residual " << worst_residual << "\n";
        return kExitCertification;
    }
    return 0;
}

// ------------------------------------------------------------------- simulate

int cmd_simulate(const std::string& out_path, double sigma, const std::string& preset, int xi,
                 std::optional<double> eps, double t_min, double t_max, int n_modes) {
    if (!(sigma > 0.0)) throw ConfigError("--sigma must be positive");
    TorusField y0(n_modes);
    if (preset == "cosine")
        y0 = TorusField::cosine(n_modes);
    else if (preset == "gaussian_modes")
        y0 = TorusField::gaussian_modes(n_modes);
    else if (preset == "worst_case")
        y0 = TorusField::worst_case(n_modes, xi == 0 ? 1 : xi, sigma);
    else
        throw ConfigError("unknown preset '" + preset +
                          "' (expected cosine, gaussian_modes or worst_case)");
    GTSystem system{sigma, GTSystem::Domain::torus};
    const auto cert = assemble_strategy2(system, std::max(n_modes + 2, 16), eps);
    const auto times = make_time_grid(t_min, t_max, 200);
    const auto traj = simulate_torus(y0, sigma, times);
    const auto report = verify_certificate(cert, traj);
    std::vector<std::vector<double>> rows;
    rows.reserve(report.rows.size());
    for (const auto& row : report.rows) rows.push_back({row.t, row.norm_sq, row.envelope, row.ratio});
    Output out(out_path);
    write_csv(out.stream(), {"t", "norm_sq", "envelope", "ratio"}, rows);
    if (!report.pass) {
        std::cerr << "certificate envelope violated: max ratio " << report.max_ratio << "\n";
        return kExitCertification;
    }
    return 0;
}

// ---------------------------------------------------------------------- bound

int cmd_bound(const std::string& out_path, const std::string& kind, double t_min, double t_max,
              int points, int dim, double mass, double l2) {
    if (!(mass > 0.0) || !(l2 > 0.0)) throw ConfigError("--mass and --l2 must be positive");
    const auto times = num::log_grid(std::max(t_min, 1e-6), t_max, points);
    std::vector<std::vector<double>> rows;
    rows.reserve(times.size());
    if (kind == "gt_line") {
        for (double t : times) {
            EnvelopeSample detail;
            gt_line_global_bound(t, mass * mass, l2 * l2, &detail);
            rows.push_back({t, detail.bound, detail.argmin_R});
        }
    } else if (kind == "gt_ptilde") {
        for (double t : times) {
            EnvelopeSample detail;
            gt_line_ptilde_bound(t, mass * mass, l2 * l2, &detail);
            rows.push_back({t, detail.bound, detail.argmin_R});
        }
    } else if (kind == "psi_heat") {
        NashProfile profile;
        profile.d = dim;
        profile.rate_fn = [](double s) { return 2.0 * std::min(s, 1.0) * std::min(s, 1.0); };
        profile.const_fn = [](double) { return 1.0; };
        profile.sup_const_tail = [](double) { return 1.0; };
        profile.mass = mass;
        profile.l2_norm = l2;
        for (double t : times) {
            const auto sample = psi_envelope(t, profile, {1e-6, 50.0});
            rows.push_back({t, sample.bound, sample.argmin_R});
        }
    } else {
        throw ConfigError("unknown bound kind '" + kind +
                          "' (expected gt_line, gt_ptilde or psi_heat)");
    }
    Output out(out_path);
    write_csv(out.stream(), {"t", "bound", "argmin_R"}, rows);
    return 0;
}

// --------------------------------------------------------------------- figure

int cmd_figure(const std::string& out_path, const std::string& name) {
    const std::vector<std::string> known = {"fig1_triangle", "fig2_lambdas", "fig3_deltas",
                                            "fig4_tilde",    "fig5_gap",     "fig6_hplus",
                                            "fig7_mutilde"};
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    if (name == "fig1_triangle") {
        // Admissible region and separating curve at s = 5.
        const double s = 5.0;
        const auto k = constants_of_mode(s);
        header = {"delta", "lambda_boundary", "lambda_separatrix"};
        for (double delta : num::linear_grid(1e-4, 1.0 - 1e-4, 400)) {
            const double boundary = 2.0 * (1.0 - delta);
            double sep = 0.0;
            if (delta < k.twist_limit()) sep = lambda_star(delta, k);
            rows.push_back({delta, boundary, sep});
        }
    } else if (name == "fig2_lambdas" || name == "fig3_deltas") {
        const auto grid = num::log_grid(1e-3, 1e3, 400);
        const auto coarse = rate_curve(RateVariant::coarse, grid);
        const auto abs_opt = rate_curve(RateVariant::abstract_opt, grid);
        const auto mode_opt = rate_curve(RateVariant::mode_opt, grid);
        const bool lambdas = (name == "fig2_lambdas");
        header = lambdas ? std::vector<std::string>{"s", "lambda0", "lambda1", "lambda2"}
                         : std::vector<std::string>{"s", "delta0", "delta1", "delta2"};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (lambdas)
                rows.push_back({grid[i], coarse.points[i].lambda, abs_opt.points[i].lambda,
                                mode_opt.points[i].lambda});
            else
                rows.push_back({grid[i], coarse.points[i].delta, abs_opt.points[i].delta,
                                mode_opt.points[i].delta});
        }
    } else if (name == "fig4_tilde" || name == "fig5_gap") {
        const auto grid = num::log_grid(1e-3, 1e3, 400);
        const auto mode_opt = rate_curve(RateVariant::mode_opt, grid);
        if (name == "fig4_tilde") {
            header = {"s", "lambda2", "lambda2_tilde"};
            for (std::size_t i = 0; i < grid.size(); ++i)
                rows.push_back({grid[i], mode_opt.points[i].lambda, closed_form_rate(grid[i])});
        } else {
            header = {"s", "gap_scaled"};
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double s = grid[i];
                rows.push_back({s, (mode_opt.points[i].lambda - closed_form_rate(s)) *
                                       (1.0 + 1.0 / (s * s))});
            }
        }
    } else if (name == "fig6_hplus") {
        header = {"s", "hplus_t1", "hplus_t5", "hplus_t10"};
        for (double s : num::linear_grid(1e-3, 2.0, 800))
            rows.push_back({s, propagator_norm_sq(s, 1.0, 1.0), propagator_norm_sq(s, 1.0, 5.0),
                            propagator_norm_sq(s, 1.0, 10.0)});
    } else if (name == "fig7_mutilde") {
        header = {"s", "mu", "mu_tilde"};
        for (double s : num::linear_grid(1e-3, 2.0, 800))
            rows.push_back({s, modal_spectral_gap(s, 1.0), line_rate_tilde(s)});
    } else {
        std::string names;
        for (const auto& n : known) names += " " + n;
        throw ConfigError("unknown figure '" + name + "'; valid names:" + names);
    }
    Output out(out_path);
    write_csv(out.stream(), header, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decay-rate certification toolkit for transport-relaxation systems"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    app.add_option("--out", out_path, "output file (stdout when omitted)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

    // rates
    auto* rates = app.add_subcommand("rates", "optimized rate curves over a frequency grid");
    double s_min = 1e-3, s_max = 1e3;
    int points = 400;
    rates->add_option("--s-min", s_min, "grid start");
    rates->add_option("--s-max", s_max, "grid end");
    rates->add_option("--points", points, "grid size");

    // certify
    auto* certify = app.add_subcommand("certify", "global decay certificates on the torus");
    double sigma = 1.0;
    int xi_max = 256;
    double eps_value = -1.0;
    certify->add_option("--sigma", sigma, "relaxation rate")->required();
    certify->add_option("--xi-max", xi_max, "mode cutoff for suprema");
    certify->add_option("--eps", eps_value, "rate sacrifice for the defective case");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "exact modal simulation with envelope check");
    double sim_sigma = 1.0, t_min = 1e-2, t_max = 1e3;
    std::string preset = "cosine";
    int preset_xi = 1, n_modes = 64;
    double sim_eps = -1.0;
    simulate->add_option("--sigma", sim_sigma, "relaxation rate");
    simulate->add_option("--preset", preset, "initial datum: cosine, gaussian_modes, worst_case");
    simulate->add_option("--xi", preset_xi, "mode for the worst_case preset");
    simulate->add_option("--modes", n_modes, "torus truncation");
    simulate->add_option("--eps", sim_eps, "rate sacrifice for sigma = 2");
    simulate->add_option("--t-min", t_min, "first positive sample time");
    simulate->add_option("--t-max", t_max, "last sample time");

    // bound
    auto* bound = app.add_subcommand("bound", "decay envelopes on the line / whole space");
    std::string kind = "gt_line";
    double b_t_min = 1e-1, b_t_max = 1e3, mass = 1.0, l2 = 1.0;
    int b_points = 200, dim = 1;
    bound->add_option("--kind", kind, "gt_line, gt_ptilde or psi_heat");
    bound->add_option("--t-min", b_t_min, "first sample time");
    bound->add_option("--t-max", b_t_max, "last sample time");
    bound->add_option("--points", b_points, "number of samples");
    bound->add_option("--dim", dim, "spatial dimension (psi_heat)");
    bound->add_option("--mass", mass, "L1 norm of the initial datum");
    bound->add_option("--l2", l2, "L2 norm of the initial datum");
    bound->add_flag_callback(
        "--preset-gaussian",
        [&]() {
            mass = 1.0;
            l2 = std::sqrt(0.5 / std::sqrt(2.0 * M_PI));
        },
        "norms of the Gaussian line preset");

    // figure
    auto* figure = app.add_subcommand("figure", "plot-ready data tables");
    std::string fig_name;
    figure->add_option("name", fig_name, "figure name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (rates->parsed()) return cmd_rates(out_path, s_min, s_max, points);
        if (certify->parsed())
            return cmd_certify(out_path, sigma,
                               eps_value > 0.0 ? std::optional<double>(eps_value) : std::nullopt,
                               xi_max);
        if (simulate->parsed())
            return cmd_simulate(out_path, sim_sigma, preset, preset_xi,
                                sim_eps > 0.0 ? std::optional<double>(sim_eps) : std::nullopt,
                                t_min, t_max, n_modes);
        if (bound->parsed()) return cmd_bound(out_path, kind, b_t_min, b_t_max, b_points, dim, mass, l2);
        if (figure->parsed()) return cmd_figure(out_path, fig_name);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DefectiveSigma& e) {
        std::cerr << "DefectiveSigma: " << e.what() << "\n";
        return kExitCertification;
    } catch (const CertificateViolation& e) {
        std::cerr << "CertificateViolation: " << e.what() << "\n";
        return kExitCertification;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
