#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "hyporate/errors.hpp"

namespace hyporate {

using cplx = std::complex<double>;

// Dense complex matrices up to dimension 16: just enough linear algebra for
// mode matrices, deformation matrices and propagators, with no external
// dependency.
inline constexpr int kMaxDim = 16;
inline constexpr double kHermitTol = 1e-10;
inline constexpr double kPdTol = 1e-10;
inline constexpr double kEigTol = 1e-10;
inline constexpr double kEigClusterRadius = 1e-8;
inline constexpr double kRankTolFactor = 1e-8;

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    cplx& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * dim_ + j];
    }
    std::span<const cplx> entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double max_abs() const;  // max_ij |a_ij|

    bool is_hermitian(double tol = kHermitTol) const;
    bool is_anti_hermitian(double tol = kHermitTol) const;

    std::vector<cplx> apply(std::span<const cplx> x) const;

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

  private:
    int dim_ = 0;
    std::vector<cplx> entries_;
};

struct EigenResult {
    std::vector<cplx> values;
    std::vector<bool> defect_flags;  // true when the eigenvalue's cluster is defective
};

// Eigenvalues of a Hermitian matrix, ascending. Throws NotHermitian.
// When vectors != nullptr it also returns an orthonormal eigenbasis
// (column j of *vectors pairs with result[j]).
std::vector<double> eig_hermitian(const ComplexMatrix& a, ComplexMatrix* vectors = nullptr);

// Eigenvalues of a general complex matrix with per-eigenvalue defect flags.
// dim <= 2 by closed form, larger via Hessenberg reduction + shifted QR.
EigenResult eig_general(const ComplexMatrix& a);

// Normalized eigenvectors of a non-defective matrix, column j pairing with
// values[j]. Throws DefectiveMatrix.
ComplexMatrix eigenvectors_general(const ComplexMatrix& a, const EigenResult& eig);

// Ratio of extreme eigenvalues of a Hermitian positive definite matrix.
double condition_number(const ComplexMatrix& p);

// e^{-C t} for a 2x2 matrix. Distinct eigenvalues follow the spectral
// formula; a coalescing pair degenerates continuously into
// e^{-mu t} (I - t (C - mu I)).
ComplexMatrix expm_2x2(const ComplexMatrix& c, double t);

// Largest eigenvalue of M* M (squared operator norm).
double operator_norm_sq(const ComplexMatrix& m);

// Singular values, descending (square roots of the spectrum of M* M).
std::vector<double> singular_values(const ComplexMatrix& m);

// Unit right-singular vector attaining operator_norm_sq.
std::vector<cplx> top_singular_vector(const ComplexMatrix& m);

}  // namespace hyporate
