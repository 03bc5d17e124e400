#include "hyporate/gt_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyporate {

namespace {

std::array<cplx, 2> apply_2x2(const ComplexMatrix& m, const std::array<cplx, 2>& v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
}

double norm_sq_2(const std::array<cplx, 2>& v) { return std::norm(v[0]) + std::norm(v[1]); }

}  // namespace

TorusField::TorusField(int n_max_) : n_max(n_max_) {
    if (n_max < 1) throw RangeError("TorusField: n_max must be >= 1");
    modes.assign(static_cast<std::size_t>(2 * n_max + 1), {});
}

double TorusField::norm_sq() const {
    double total = 0.0;
    for (const auto& m : modes) total += norm_sq_2(m);
    return total;
}

bool TorusField::conjugate_symmetric(double tol) const {
    for (int xi = 1; xi <= n_max; ++xi)
        for (int c = 0; c < 2; ++c)
            if (std::abs(mode(xi)[static_cast<std::size_t>(c)] -
                         std::conj(mode(-xi)[static_cast<std::size_t>(c)])) > tol)
                return false;
    return true;
}

TorusField TorusField::cosine(int n_max) {
    TorusField f(n_max);
    f.mode(1)[0] = 0.5;
    f.mode(-1)[0] = 0.5;
    return f;
}

TorusField TorusField::random(int n_max, std::uint64_t seed) {
    TorusField f(n_max);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int xi = 1; xi <= n_max; ++xi) {
        const double damp = std::exp(-0.1 * xi);
        for (int c = 0; c < 2; ++c) {
            const cplx z(gauss(rng), gauss(rng));
            f.mode(xi)[static_cast<std::size_t>(c)] = damp * z;
            f.mode(-xi)[static_cast<std::size_t>(c)] = damp * std::conj(z);
        }
    }
    // Real zero mode of the flux; mass mode removed.
    f.mode(0)[1] = gauss(rng);
    return f;
}

TorusField TorusField::gaussian_modes(int n_max) {
    TorusField f(n_max);
    for (int xi = 1; xi <= n_max; ++xi) {
        const double amp = std::exp(-std::pow(xi / 8.0, 2));
        f.mode(xi)[0] = amp;
        f.mode(-xi)[0] = amp;
    }
    return f;
}

TorusField TorusField::single_mode(int n_max, int xi, const std::array<cplx, 2>& uv) {
    if (xi == 0 || std::abs(xi) > n_max) throw RangeError("single_mode: xi out of range");
    TorusField f(n_max);
    f.mode(xi) = uv;
    f.mode(-xi) = {std::conj(uv[0]), std::conj(uv[1])};
    return f;
}

TorusField TorusField::worst_case(int n_max, int xi, double sigma) {
    if (xi == 0) throw RangeError("worst_case: xi must be nonzero");
    const ComplexMatrix c = gt_matrix(xi, sigma);
    const EigenResult eig = eig_general(c);
    std::array<cplx, 2> uv{};
    if (eig.defect_flags[0] || eig.defect_flags[1]) {
        // Defective pair: the polynomial growth acts on anything outside the
        // lone eigendirection; take the direction orthogonal to it.
        const ComplexMatrix shifted = c - (0.5 * c.trace()) * ComplexMatrix::identity(2);
        const auto v = top_singular_vector(shifted);
        uv = {v[0], v[1]};
    } else {
        // Eigenvector of the slow eigenvalue (smallest real part).
        const std::size_t slow = eig.values[0].real() <= eig.values[1].real() ? 0 : 1;
        const ComplexMatrix vecs = eigenvectors_general(c, eig);
        uv = {vecs(0, static_cast<int>(slow)), vecs(1, static_cast<int>(slow))};
    }
    const double n = std::sqrt(norm_sq_2(uv));
    uv[0] /= n;
    uv[1] /= n;
    return single_mode(n_max, xi, uv);
}

LineField::LineField(double xi_max, double h) : h_xi(h) {
    if (!(h > 0.0) || !(xi_max > h)) throw RangeError("LineField: bad grid parameters");
    k_max = static_cast<int>(std::floor(xi_max / h));
    samples.assign(static_cast<std::size_t>(2 * k_max + 1), {});
}

double LineField::norm_sq() const {
    // Trapezoid in xi with the 1/(2 pi) Plancherel factor.
    double total = 0.0;
    for (int k = -k_max; k <= k_max; ++k) {
        const double w = (k == -k_max || k == k_max) ? 0.5 : 1.0;
        total += w * norm_sq_2(samples[static_cast<std::size_t>(k + k_max)]);
    }
    return total * h_xi / (2.0 * M_PI);
}

LineField LineField::gaussian(double xi_max, double h) {
    LineField f(xi_max, h);
    for (int k = -f.k_max; k <= f.k_max; ++k) {
        const double xi = f.xi_at(k);
        f.samples[static_cast<std::size_t>(k + f.k_max)][0] = std::exp(-xi * xi);
    }
    return f;
}

ModalState propagate_mode(const ModalState& state, double sigma, double t) {
    if (!(t >= 0.0)) throw RangeError("propagate_mode: t must be nonnegative");
    const ComplexMatrix prop = expm_2x2(gt_matrix(state.xi, sigma), t);
    return {state.xi, apply_2x2(prop, state.uv)};
}

double propagator_norm_sq(double xi, double sigma, double t) {
    if (!(t >= 0.0)) throw RangeError("propagator_norm_sq: t must be nonnegative");
    return operator_norm_sq(expm_2x2(gt_matrix(xi, sigma), t));
}

std::array<cplx, 2> worst_modal_direction(double xi, double sigma, double t) {
    const auto v = top_singular_vector(expm_2x2(gt_matrix(xi, sigma), t));
    return {v[0], v[1]};
}

TorusField evolve_torus(const TorusField& field, double sigma, double t, Exec exec) {
    TorusField out = field;
    const int n = field.n_max;
    for_each_index(static_cast<std::size_t>(2 * n + 1), exec, [&](std::size_t i) {
        const int xi = static_cast<int>(i) - n;
        const ModalState evolved = propagate_mode({static_cast<double>(xi), field.mode(xi)}, sigma, t);
        out.mode(xi) = evolved.uv;
    });
    return out;
}

LineField evolve_line(const LineField& field, double sigma, double t, Exec exec) {
    LineField out = field;
    const int k_max = field.k_max;
    for_each_index(static_cast<std::size_t>(2 * k_max + 1), exec, [&](std::size_t i) {
        const int k = static_cast<int>(i) - k_max;
        const ModalState evolved = propagate_mode(
            {field.xi_at(k), field.samples[static_cast<std::size_t>(k + k_max)]}, sigma, t);
        out.samples[static_cast<std::size_t>(k + k_max)] = evolved.uv;
    });
    return out;
}

Trajectory simulate_torus(const TorusField& y0, double sigma, std::span<const double> times,
                          Exec exec) {
    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.initial_norm_sq = y0.norm_sq();
    traj.norm_sq = map_indexed<double>(times.size(), exec, [&](std::size_t i) {
        return evolve_torus(y0, sigma, times[i], Exec::serial).norm_sq();
    });
    return traj;
}

Trajectory simulate_line(const LineField& y0, double sigma, std::span<const double> times,
                         Exec exec) {
    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.initial_norm_sq = y0.norm_sq();
    traj.norm_sq = map_indexed<double>(times.size(), exec, [&](std::size_t i) {
        return evolve_line(y0, sigma, times[i], Exec::serial).norm_sq();
    });
    return traj;
}

VerifyReport verify_certificate(const DecayCertificate& cert, const Trajectory& traj) {
    VerifyReport report;
    report.rows.reserve(traj.times.size());
    double max_ratio = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        TrajectoryRow row;
        row.t = traj.times[i];
        row.norm_sq = traj.norm_sq[i];
        row.envelope = cert.mult_const * std::exp(-cert.rate * row.t) * traj.initial_norm_sq;
        row.ratio = (row.envelope > 0.0) ? row.norm_sq / row.envelope : 0.0;
        max_ratio = std::max(max_ratio, row.ratio);
        report.rows.push_back(row);
    }
    report.max_ratio = max_ratio;
    report.sharpness_at_end = report.rows.empty() ? 0.0 : report.rows.back().ratio;
    report.pass = max_ratio <= 1.0 + 1e-6;
    return report;
}

double worst_case_peak_ratio(const DecayCertificate& cert, int xi, double sigma,
                             std::span<const double> times, int angle_points, int phase_points,
                             std::array<cplx, 2>* best) {
    double best_ratio = 0.0;
    for (int a = 0; a < angle_points; ++a) {
        const double alpha = 0.5 * M_PI * a / std::max(1, angle_points - 1);
        for (int p = 0; p < phase_points; ++p) {
            const double phase = 2.0 * M_PI * p / phase_points;
            const std::array<cplx, 2> uv = {std::cos(alpha),
                                            std::sin(alpha) * std::polar(1.0, phase)};
            double peak = 0.0;
            for (double t : times) {
                const ModalState evolved = propagate_mode({static_cast<double>(xi), uv}, sigma, t);
                const double envelope = cert.mult_const * std::exp(-cert.rate * t);
                peak = std::max(peak, norm_sq_2(evolved.uv) / envelope);
            }
            if (peak > best_ratio) {
                best_ratio = peak;
                if (best) *best = uv;
            }
        }
    }
    return best_ratio;
}

}  // namespace hyporate
