#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyporate/complexmat.hpp"
#include "hyporate/parallel.hpp"

namespace hyporate {

inline constexpr double kCertTol = 1e-9;

// Two-velocity transport-relaxation system with constant exchange rate.
struct GTSystem {
    enum class Domain { torus, line };
    double sigma = 1.0;
    Domain domain = Domain::torus;
};

// A family of mode matrices xi -> C(xi).
struct ModalMatrixSystem {
    int dim = 2;
    std::function<ComplexMatrix(double)> builder;
};

// Deformation-matrix families for the two-velocity model.
enum class PFamily {
    eigendyad,      // spectral dyad sum of an arbitrary non-defective matrix
    sharp_high,     // sharp-rate matrix for |xi| > sigma/2 ("P1")
    sharp_low,      // sharp-rate matrix for 0 < |xi| < sigma/2 ("P2")
    global_theta,   // uniform-rate family with twist theta(sigma) ("Pbar")
    line_tilde,     // smooth line family for sigma = 1 ("Ptilde")
    defective_eps,  // sigma = 2 family trading rate for a finite constant
};

std::string family_name(PFamily family);

// Hermitian positive definite P with a certified rate in the inequality
// C* P + P C >= rate P.
struct DeformationMatrix {
    ComplexMatrix P;
    double certified_rate = 0.0;
    PFamily family = PFamily::eigendyad;
    double xi = 0.0;
    double sigma = 0.0;
};

// (multiplicative constant, exponential rate) on squared norms:
// |y(t)|^2 <= mult_const e^{-rate t} |y(0)|^2.
struct DecayCertificate {
    enum class Scope { modal, global_torus, global_line };
    double mult_const = 1.0;
    double rate = 0.0;
    Scope scope = Scope::modal;
    PFamily family = PFamily::eigendyad;
    double xi = 0.0;
    double sigma = 0.0;
    double residual = 0.0;  // most negative eigenvalue of the scaled inequality
};

// Mode matrix of the two-velocity model: [[0, i xi], [i xi, sigma]].
ComplexMatrix gt_matrix(double xi, double sigma);

// Re(sigma/2 - sqrt(sigma^2/4 - xi^2)), the sharp modal rate divided by 2.
double modal_spectral_gap(double xi, double sigma);

// Uniform gap over nonzero integer modes and the set of slowest modes.
struct UniformGap {
    double mu_bar = 0.0;
    std::vector<int> slow_modes;      // {1} means {-1, 1}; empty with
    bool all_nonzero_modes = false;   // all_nonzero_modes set means Z \ {0}
};
UniformGap uniform_gap(double sigma);

// Twist parameter of the uniform family: sigma below 2, 4/sigma above.
double theta_of_sigma(double sigma);

// Optimal modal twist theta(sigma) (1 + xi^2) / (2 xi^2).
double delta_bar(double xi, double sigma);

// Certified rate (x 1/2) of the smooth line family.
double line_rate_tilde(double xi);

// Smallest eigenvalue of C* P + P C - rate P after scaling P to unit
// largest eigenvalue.
double inequality_residual(const ComplexMatrix& p, const ComplexMatrix& c, double rate);

// Dyad-sum deformation matrix from the eigenvectors of C*; weights default
// to 1 when empty. Throws DefectiveMatrix / ZeroEigenvalue.
DeformationMatrix build_P_eigendyad(const ComplexMatrix& c, std::span<const double> weights = {});

// Closed-form family member for the two-velocity model; eps is only read by
// defective_eps. Throws FamilyDomainError outside the family's domain.
DeformationMatrix gt_P_family(double xi, double sigma, PFamily family, double eps = 0.0);

// Verifies the matrix inequality and wraps (cond(P), rate) into a modal
// certificate. Throws CertificateViolation when the residual is beyond
// tolerance.
DecayCertificate certify(const DeformationMatrix& p, const ComplexMatrix& c);

// Per-mode report of an assembled strategy, for sweeps and serialization.
struct ModeReport {
    int xi = 0;
    PFamily family = PFamily::sharp_high;
    double cond = 1.0;
    double rate = 0.0;
    double residual = 0.0;
};

// Strategy 1: sharp-rate matrices mode by mode; the global constant is the
// supremum of their condition numbers. Strategy 2 swaps fast modes to the
// uniform family, which never increases the constant. sigma = 2 requires an
// eps policy (DefectiveSigma otherwise).
DecayCertificate assemble_strategy1(const GTSystem& system, int xi_max = 256,
                                    std::optional<double> eps = {});
DecayCertificate assemble_strategy2(const GTSystem& system, int xi_max = 256,
                                    std::optional<double> eps = {});

std::vector<ModeReport> strategy_mode_reports(const GTSystem& system, int strategy,
                                              int xi_max = 256, std::optional<double> eps = {},
                                              Exec exec = Exec::parallel);

// Twisted modal functional: sum over nonzero modes of |y_hat(xi)|^2 in the
// uniform-family norm, plus |v_hat(0)|^2. Arrays hold Fourier coefficients
// for xi = -n..n at index xi + n; the zero mode of u is ignored (average
// removed). Matches the spatial functional via Parseval.
double entropy_theta(std::span<const cplx> u_hat, std::span<const cplx> v_hat, double theta);

}  // namespace hyporate
