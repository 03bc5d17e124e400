#include "hyporate/spectral_lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace hyporate {

namespace {

constexpr double kSigmaDefectTol = 1e-12;

ComplexMatrix twist_2x2(double off) {
    // [[1, -i off], [i off, 1]]
    ComplexMatrix p(2);
    p(0, 0) = 1.0;
    p(0, 1) = cplx(0.0, -off);
    p(1, 0) = cplx(0.0, off);
    p(1, 1) = 1.0;
    return p;
}

}  // namespace

std::string family_name(PFamily family) {
    switch (family) {
        case PFamily::eigendyad: return "eigendyad";
        case PFamily::sharp_high: return "P1";
        case PFamily::sharp_low: return "P2";
        case PFamily::global_theta: return "Pbar_theta";
        case PFamily::line_tilde: return "Ptilde";
        case PFamily::defective_eps: return "eps_defective";
    }
    return "unknown";
}

ComplexMatrix gt_matrix(double xi, double sigma) {
    ComplexMatrix c(2);
    c(0, 1) = cplx(0.0, xi);
    c(1, 0) = cplx(0.0, xi);
    c(1, 1) = sigma;
    return c;
}

double modal_spectral_gap(double xi, double sigma) {
    if (xi == 0.0) throw RangeError("modal_spectral_gap: xi must be nonzero");
    const std::complex<double> root = std::sqrt(std::complex<double>(0.25 * sigma * sigma - xi * xi));
    return (0.5 * sigma - root).real();
}

UniformGap uniform_gap(double sigma) {
    if (!(sigma > 0.0)) throw RangeError("uniform_gap: sigma must be positive");
    UniformGap gap;
    if (sigma <= 2.0) {
        gap.mu_bar = 0.5 * sigma;
        gap.all_nonzero_modes = true;
    } else {
        gap.mu_bar = 0.5 * sigma - std::sqrt(0.25 * sigma * sigma - 1.0);
        gap.slow_modes = {1};
    }
    return gap;
}

double theta_of_sigma(double sigma) {
    if (!(sigma > 0.0)) throw RangeError("theta_of_sigma: sigma must be positive");
    if (std::abs(sigma - 2.0) <= kSigmaDefectTol)
        throw DefectiveSigma("theta_of_sigma: sigma = 2 needs an eps policy");
    return sigma < 2.0 ? sigma : 4.0 / sigma;
}

double delta_bar(double xi, double sigma) {
    if (xi == 0.0) throw RangeError("delta_bar: xi must be nonzero");
    return theta_of_sigma(sigma) * (1.0 + xi * xi) / (2.0 * xi * xi);
}

double line_rate_tilde(double xi) {
    const double w = 4.0 * xi * xi * (1.0 + 4.0 * xi * xi);
    return 0.5 * (1.0 - 1.0 / std::sqrt(1.0 + w));
}

double inequality_residual(const ComplexMatrix& p, const ComplexMatrix& c, double rate) {
    const auto pev = eig_hermitian(p);
    const double top = pev.back();
    if (!(top > 0.0)) throw NotPositiveDefinite("inequality_residual: P has no positive spectrum");
    const ComplexMatrix ps = cplx(1.0 / top, 0.0) * p;
    const ComplexMatrix r = c.adjoint() * ps + ps * c - cplx(rate, 0.0) * ps;
    return eig_hermitian(r).front();
}

DeformationMatrix build_P_eigendyad(const ComplexMatrix& c, std::span<const double> weights) {
    const int n = c.dim();
    const EigenResult eig = eig_general(c);
    double mu = 0.0;
    bool mu_set = false;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (std::abs(eig.values[k]) <= kEigClusterRadius)
            throw ZeroEigenvalue("build_P_eigendyad: 0 in the spectrum and no kernel policy set");
        if (eig.defect_flags[k]) throw DefectiveMatrix("build_P_eigendyad: defective eigenvalue");
        const double re = eig.values[k].real();
        if (!mu_set || re < mu) {
            mu = re;
            mu_set = true;
        }
    }
    if (!weights.empty() && static_cast<int>(weights.size()) != n)
        throw RangeError("build_P_eigendyad: weight count must match dimension");

    const ComplexMatrix cstar = c.adjoint();
    const EigenResult eig_star = eig_general(cstar);
    const ComplexMatrix w = eigenvectors_general(cstar, eig_star);
    ComplexMatrix p(n);
    for (int j = 0; j < n; ++j) {
        const double weight = weights.empty() ? 1.0 : weights[static_cast<std::size_t>(j)];
        if (!(weight > 0.0)) throw RangeError("build_P_eigendyad: weights must be positive");
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) p(r, s) += weight * w(r, j) * std::conj(w(s, j));
    }
    DeformationMatrix out;
    out.P = std::move(p);
    out.certified_rate = 2.0 * mu;
    out.family = PFamily::eigendyad;
    return out;
}

DeformationMatrix gt_P_family(double xi, double sigma, PFamily family, double eps) {
    if (!(sigma > 0.0)) throw FamilyDomainError("gt_P_family: sigma must be positive");
    DeformationMatrix out;
    out.family = family;
    out.xi = xi;
    out.sigma = sigma;
    switch (family) {
        case PFamily::sharp_high:
            if (!(std::abs(xi) > 0.5 * sigma))
                throw FamilyDomainError("sharp_high needs |xi| > sigma/2");
            out.P = twist_2x2(0.5 * sigma / xi);
            out.certified_rate = 2.0 * modal_spectral_gap(xi, sigma);
            return out;
        case PFamily::sharp_low:
            if (!(xi != 0.0 && std::abs(xi) < 0.5 * sigma))
                throw FamilyDomainError("sharp_low needs 0 < |xi| < sigma/2");
            out.P = twist_2x2(2.0 * xi / sigma);
            out.certified_rate = 2.0 * modal_spectral_gap(xi, sigma);
            return out;
        case PFamily::global_theta: {
            if (xi == 0.0) throw FamilyDomainError("global_theta needs xi != 0");
            const double theta = theta_of_sigma(sigma);
            out.P = twist_2x2(0.5 * theta / xi);
            out.certified_rate = 2.0 * uniform_gap(sigma).mu_bar;
            return out;
        }
        case PFamily::line_tilde:
            if (xi == 0.0) throw FamilyDomainError("line_tilde needs xi != 0");
            if (std::abs(sigma - 1.0) > kSigmaDefectTol)
                throw FamilyDomainError("line_tilde is the sigma = 1 family");
            out.P = twist_2x2(2.0 * xi / (1.0 + 4.0 * xi * xi));
            out.certified_rate = 2.0 * line_rate_tilde(xi);
            return out;
        case PFamily::defective_eps: {
            if (std::abs(sigma - 2.0) > kSigmaDefectTol)
                throw FamilyDomainError("defective_eps is the sigma = 2 family");
            if (!(eps > 0.0 && eps < 1.0)) throw FamilyDomainError("defective_eps needs eps in (0,1)");
            if (xi == 0.0) throw FamilyDomainError("defective_eps needs xi != 0");
            const double theta = 2.0 * (2.0 - eps * eps) / (2.0 + eps * eps);
            out.P = twist_2x2(0.5 * theta / xi);
            out.certified_rate = 2.0 * (uniform_gap(2.0).mu_bar - eps);
            return out;
        }
        case PFamily::eigendyad: {
            DeformationMatrix dyad = build_P_eigendyad(gt_matrix(xi, sigma));
            dyad.xi = xi;
            dyad.sigma = sigma;
            return dyad;
        }
    }
    throw FamilyDomainError("gt_P_family: unknown family");
}

DecayCertificate certify(const DeformationMatrix& p, const ComplexMatrix& c) {
    const auto pev = eig_hermitian(p.P);
    if (pev.front() <= kPdTol)
        throw NotPositiveDefinite("certify: deformation matrix is not positive definite");
    const double residual = inequality_residual(p.P, c, p.certified_rate);
    if (residual < -kCertTol)
        throw CertificateViolation("certify: inequality residual " + std::to_string(residual));
    DecayCertificate cert;
    cert.mult_const = pev.back() / pev.front();
    cert.rate = p.certified_rate;
    cert.scope = DecayCertificate::Scope::modal;
    cert.family = p.family;
    cert.xi = p.xi;
    cert.sigma = p.sigma;
    cert.residual = residual;
    return cert;
}

namespace {

bool sigma_has_integer_defect(double sigma, int* mode) {
    const double half = 0.5 * sigma;
    const double nearest = std::round(half);
    if (nearest >= 1.0 && std::abs(half - nearest) <= kSigmaDefectTol) {
        if (mode) *mode = static_cast<int>(nearest);
        return true;
    }
    return false;
}

PFamily strategy_family(int strategy, int xi, double sigma, bool eps_policy) {
    if (eps_policy) return PFamily::defective_eps;
    if (strategy == 2) return PFamily::global_theta;
    int defect_mode = 0;
    if (sigma_has_integer_defect(sigma, &defect_mode) && std::abs(xi) == defect_mode)
        return PFamily::global_theta;  // defective but not rate-determining
    return std::abs(xi) > 0.5 * sigma ? PFamily::sharp_high : PFamily::sharp_low;
}

void check_sigma_policy(double sigma, const std::optional<double>& eps) {
    if (std::abs(sigma - 2.0) <= kSigmaDefectTol && !eps)
        throw DefectiveSigma("sigma = 2: the slowest modes are defective; supply an eps policy");
    if (eps && std::abs(sigma - 2.0) > kSigmaDefectTol)
        throw FamilyDomainError("eps policy only applies to sigma = 2");
}

DecayCertificate assemble_strategy(const GTSystem& system, int strategy, int xi_max,
                                   const std::optional<double>& eps) {
    const double sigma = system.sigma;
    if (!(sigma > 0.0)) throw RangeError("assemble_strategy: sigma must be positive");
    if (xi_max < static_cast<int>(0.5 * sigma) + 2)
        throw RangeError("assemble_strategy: xi_max too small for this sigma");
    check_sigma_policy(sigma, eps);
    const bool eps_policy = eps.has_value();

    double rate = 0.0;
    if (eps_policy)
        rate = 2.0 * (uniform_gap(2.0).mu_bar - *eps);
    else
        rate = 2.0 * uniform_gap(sigma).mu_bar;

    // Condition numbers of every family decrease monotonically away from the
    // slowest admissible mode, and tend to 1 for |xi| -> infinity, so the
    // supremum over Z \ {0} is attained on |xi| <= xi_max.
    double sup_cond = 1.0;
    for (int xi = 1; xi <= xi_max; ++xi) {
        const PFamily family = strategy_family(strategy, xi, sigma, eps_policy);
        const DeformationMatrix p = gt_P_family(xi, sigma, family, eps_policy ? *eps : 0.0);
        sup_cond = std::max(sup_cond, condition_number(p.P));
    }

    DecayCertificate cert;
    cert.mult_const = sup_cond;
    cert.rate = rate;
    cert.scope = DecayCertificate::Scope::global_torus;
    cert.family = eps_policy ? PFamily::defective_eps
                             : (strategy == 2 ? PFamily::global_theta : PFamily::sharp_high);
    cert.sigma = sigma;
    return cert;
}

}  // namespace

DecayCertificate assemble_strategy1(const GTSystem& system, int xi_max, std::optional<double> eps) {
    return assemble_strategy(system, 1, xi_max, eps);
}

DecayCertificate assemble_strategy2(const GTSystem& system, int xi_max, std::optional<double> eps) {
    return assemble_strategy(system, 2, xi_max, eps);
}

std::vector<ModeReport> strategy_mode_reports(const GTSystem& system, int strategy, int xi_max,
                                              std::optional<double> eps, Exec exec) {
    const double sigma = system.sigma;
    check_sigma_policy(sigma, eps);
    const bool eps_policy = eps.has_value();
    return map_indexed<ModeReport>(static_cast<std::size_t>(xi_max), exec, [&](std::size_t i) {
        const int xi = static_cast<int>(i) + 1;
        const PFamily family = strategy_family(strategy, xi, sigma, eps_policy);
        const DeformationMatrix p = gt_P_family(xi, sigma, family, eps_policy ? *eps : 0.0);
        ModeReport report;
        report.xi = xi;
        report.family = family;
        report.cond = condition_number(p.P);
        report.rate = p.certified_rate;
        report.residual = inequality_residual(p.P, gt_matrix(xi, sigma), p.certified_rate);
        return report;
    });
}

double entropy_theta(std::span<const cplx> u_hat, std::span<const cplx> v_hat, double theta) {
    if (!(theta >= 0.0) || theta >= 2.0)
        throw ThetaOutOfRange("entropy_theta: theta must lie in [0, 2)");
    if (u_hat.size() != v_hat.size() || u_hat.size() % 2 == 0)
        throw RangeError("entropy_theta: arrays must cover xi = -n..n");
    const int n = static_cast<int>(u_hat.size() / 2);
    double total = std::norm(v_hat[static_cast<std::size_t>(n)]);
    for (int xi = -n; xi <= n; ++xi) {
        if (xi == 0) continue;
        const cplx u = u_hat[static_cast<std::size_t>(xi + n)];
        const cplx v = v_hat[static_cast<std::size_t>(xi + n)];
        // |y|^2_P with P = [[1, -i theta/(2 xi)], [i theta/(2 xi), 1]]
        const double off = 0.5 * theta / xi;
        total += std::norm(u) + std::norm(v) + 2.0 * (cplx(0.0, -off) * v * std::conj(u)).real();
    }
    return total;
}

}  // namespace hyporate
