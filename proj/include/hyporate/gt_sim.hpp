#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hyporate/complexmat.hpp"
#include "hyporate/parallel.hpp"
#include "hyporate/spectral_lyapunov.hpp"

namespace hyporate {

// One Fourier mode of the mass/flux pair (u_hat, v_hat).
struct ModalState {
    double xi = 0.0;
    std::array<cplx, 2> uv{};
};

// Truncated Fourier series on the torus. Entries are Fourier coefficients
// c_xi, so sum of |c_xi|^2 equals the averaged spatial norm
// (1/2pi) int (|u|^2 + |v|^2) dx.
struct TorusField {
    int n_max = 0;
    std::vector<std::array<cplx, 2>> modes;  // index xi + n_max

    explicit TorusField(int n_max_);
    std::array<cplx, 2>& mode(int xi) { return modes[static_cast<std::size_t>(xi + n_max)]; }
    const std::array<cplx, 2>& mode(int xi) const {
        return modes[static_cast<std::size_t>(xi + n_max)];
    }
    double norm_sq() const;
    bool conjugate_symmetric(double tol = 1e-12) const;

    // u = cos x, v = 0.
    static TorusField cosine(int n_max = 64);
    // Mean-zero random real field with geometrically damped modes.
    static TorusField random(int n_max, std::uint64_t seed);
    // Gaussian-damped mode profile, mean removed.
    static TorusField gaussian_modes(int n_max = 64);
    // Conjugate-symmetric pair at +-xi carrying the given modal vector.
    static TorusField single_mode(int n_max, int xi, const std::array<cplx, 2>& uv);
    // Slow direction of the mode pair +-xi (generalized direction at a
    // defective mode).
    static TorusField worst_case(int n_max, int xi, double sigma);
};

// Sampled Fourier transform on a symmetric grid xi_k = k h, |k| <= k_max.
// Norms are (1/2pi) trapezoid integrals over the grid.
struct LineField {
    double h_xi = 1.0 / 512;
    int k_max = 0;
    std::vector<std::array<cplx, 2>> samples;  // index k + k_max

    LineField(double xi_max, double h);
    double xi_at(int k) const { return h_xi * k; }
    double norm_sq() const;

    // u_hat(xi) = exp(-xi^2), v = 0.
    static LineField gaussian(double xi_max = 16.0, double h = 1.0 / 512);
};

// Exact propagation of one mode over time t.
ModalState propagate_mode(const ModalState& state, double sigma, double t);

// Squared propagator norm h_plus(t, xi) of the mode matrix.
double propagator_norm_sq(double xi, double sigma, double t);

// Unit initial datum attaining the squared propagator norm at time t.
std::array<cplx, 2> worst_modal_direction(double xi, double sigma, double t);

TorusField evolve_torus(const TorusField& field, double sigma, double t,
                        Exec exec = Exec::parallel);
LineField evolve_line(const LineField& field, double sigma, double t, Exec exec = Exec::parallel);

// Norm-squared history sampled on a time grid.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> norm_sq;
    double initial_norm_sq = 0.0;
};

Trajectory simulate_torus(const TorusField& y0, double sigma, std::span<const double> times,
                          Exec exec = Exec::parallel);
Trajectory simulate_line(const LineField& y0, double sigma, std::span<const double> times,
                         Exec exec = Exec::parallel);

// Pointwise comparison of a trajectory against a certificate envelope.
struct TrajectoryRow {
    double t = 0.0;
    double norm_sq = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
};
struct VerifyReport {
    bool pass = false;
    double max_ratio = 0.0;
    double sharpness_at_end = 0.0;  // ratio at the last sample
    std::vector<TrajectoryRow> rows;
};
VerifyReport verify_certificate(const DecayCertificate& cert, const Trajectory& traj);

// Exhaustive search over unit modal vectors (angle x phase grid) for the
// datum whose trajectory gets closest to the envelope; returns the best peak
// ratio.
double worst_case_peak_ratio(const DecayCertificate& cert, int xi, double sigma,
                             std::span<const double> times, int angle_points = 36,
                             int phase_points = 20, std::array<cplx, 2>* best = nullptr);

}  // namespace hyporate
