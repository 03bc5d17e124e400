#include "hyporate/complexmat.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace hyporate {

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim)
        throw RangeError("matrix dimension must be in [1, " + std::to_string(kMaxDim) + "]");
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    check_dim(dim);
    entries_.assign(static_cast<std::size_t>(dim) * dim, cplx{});
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : ComplexMatrix(static_cast<int>(rows.size())) {
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim_)
            throw RangeError("ragged initializer for ComplexMatrix");
        int j = 0;
        for (const cplx& v : row) (*this)(i, j++) = v;
        ++i;
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t{};
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : entries_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst <= tol * std::max(1.0, max_abs());
}

bool ComplexMatrix::is_anti_hermitian(double tol) const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) + std::conj((*this)(j, i))));
    return worst <= tol * std::max(1.0, max_abs());
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> x) const {
    if (static_cast<int>(x.size()) != dim_) throw RangeError("vector/matrix size mismatch");
    std::vector<cplx> y(x.size());
    for (int i = 0; i < dim_; ++i) {
        cplx acc{};
        for (int j = 0; j < dim_; ++j) acc += (*this)(i, j) * x[j];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw RangeError("dimension mismatch");
    ComplexMatrix m(a.dim_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) m.entries_[k] = a.entries_[k] + b.entries_[k];
    return m;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw RangeError("dimension mismatch");
    ComplexMatrix m(a.dim_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) m.entries_[k] = a.entries_[k] - b.entries_[k];
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw RangeError("dimension mismatch");
    const int n = a.dim_;
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < n; ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix m(a.dim_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) m.entries_[k] = s * a.entries_[k];
    return m;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic Jacobi with complex rotations.
// ---------------------------------------------------------------------------

namespace {

double off_diag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). Updates a (Hermitian) and
// accumulates the rotation into v when v != nullptr.
void jacobi_rotate(ComplexMatrix& a, int p, int q, ComplexMatrix* v) {
    const cplx apq = a(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) return;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const cplx phase = apq / abs_apq;

    // Real 2x2 rotation for [[app, |apq|], [|apq|, aqq]].
    const double tau = (aqq - app) / (2.0 * abs_apq);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = a.dim();
    // Columns: (col_p, col_q) <- (c*col_p - s*conj(phase)*col_q, s*phase*col_p + c*col_q)
    for (int i = 0; i < n; ++i) {
        const cplx aip = a(i, p);
        const cplx aiq = a(i, q);
        a(i, p) = c * aip - s * std::conj(phase) * aiq;
        a(i, q) = s * phase * aip + c * aiq;
    }
    for (int j = 0; j < n; ++j) {
        const cplx apj = a(p, j);
        const cplx aqj = a(q, j);
        a(p, j) = c * apj - s * phase * aqj;
        a(q, j) = s * std::conj(phase) * apj + c * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cplx(a(p, p).real(), 0.0);
    a(q, q) = cplx(a(q, q).real(), 0.0);

    if (v) {
        for (int i = 0; i < n; ++i) {
            const cplx vip = (*v)(i, p);
            const cplx viq = (*v)(i, q);
            (*v)(i, p) = c * vip - s * std::conj(phase) * viq;
            (*v)(i, q) = s * phase * vip + c * viq;
        }
    }
}

}  // namespace

std::vector<double> eig_hermitian(const ComplexMatrix& a, ComplexMatrix* vectors) {
    if (!a.is_hermitian()) throw NotHermitian("eig_hermitian: matrix is not Hermitian");
    const int n = a.dim();
    ComplexMatrix work = a;
    // Symmetrize exactly so rounding in the input cannot drift.
    for (int i = 0; i < n; ++i) {
        work(i, i) = cplx(work(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (work(i, j) + std::conj(work(j, i)));
            work(i, j) = m;
            work(j, i) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, work.max_abs());
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (off_diag_norm(work) <= 1e-15 * scale * n) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) jacobi_rotate(work, p, q, vectors ? &v : nullptr);
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return work(i, i).real() < work(j, j).real(); });
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) values[static_cast<std::size_t>(k)] = work(order[k], order[k]).real();
    if (vectors) {
        *vectors = ComplexMatrix(n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) (*vectors)(i, k) = v(i, order[k]);
    }
    return values;
}

// ---------------------------------------------------------------------------
// General complex eigenvalues: Hessenberg + shifted QR with deflation.
// ---------------------------------------------------------------------------

namespace {

std::array<cplx, 2> eig_2x2(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr = a + d;
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    cplx l1 = 0.5 * (tr + disc);
    cplx l2 = 0.5 * (tr - disc);
    // Recompute the smaller root from the product when possible.
    if (std::abs(l1) > std::abs(l2) && std::abs(l1) > 0.0) l2 = det / l1;
    return {l1, l2};
}

void hessenberg_reduce(ComplexMatrix& h) {
    const int n = h.dim();
    for (int k = 0; k < n - 2; ++k) {
        // Householder vector for column k below the subdiagonal.
        double norm_x = 0.0;
        for (int i = k + 1; i < n; ++i) norm_x += std::norm(h(i, k));
        norm_x = std::sqrt(norm_x);
        if (norm_x <= 0.0) continue;
        const cplx x0 = h(k + 1, k);
        const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        const cplx alpha = -phase * norm_x;
        std::vector<cplx> v(static_cast<std::size_t>(n - k - 1));
        v[0] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[static_cast<std::size_t>(i - k - 1)] = h(i, k);
        double vnorm2 = 0.0;
        for (const cplx& c : v) vnorm2 += std::norm(c);
        if (vnorm2 <= 0.0) continue;

        // H = I - 2 v v* / |v|^2 applied from both sides on rows/cols k+1..n-1.
        for (int j = k; j < n; ++j) {
            cplx dot{};
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[static_cast<std::size_t>(i - k - 1)]) * h(i, j);
            dot *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) h(i, j) -= dot * v[static_cast<std::size_t>(i - k - 1)];
        }
        for (int i = 0; i < n; ++i) {
            cplx dot{};
            for (int j = k + 1; j < n; ++j) dot += h(i, j) * v[static_cast<std::size_t>(j - k - 1)];
            dot *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[static_cast<std::size_t>(j - k - 1)]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

// One implicit single-shift QR step (Francis bulge chase) on the active
// Hessenberg block [lo, hi].
void qr_step(ComplexMatrix& h, int lo, int hi, cplx shift) {
    const int n = h.dim();
    cplx x = h(lo, lo) - shift;
    cplx y = h(lo + 1, lo);
    for (int k = lo; k < hi; ++k) {
        // Givens rotation in the (k, k+1) plane zeroing y against x.
        const double r = std::sqrt(std::norm(x) + std::norm(y));
        cplx c(1.0, 0.0), s{};
        if (r > 0.0) {
            c = x / r;
            s = y / r;
        }
        // G* from the left on rows k, k+1.
        for (int j = std::max(0, k - 1); j < n; ++j) {
            const cplx a = h(k, j);
            const cplx b = h(k + 1, j);
            h(k, j) = std::conj(c) * a + std::conj(s) * b;
            h(k + 1, j) = -s * a + c * b;
        }
        if (k > lo) h(k + 1, k - 1) = 0.0;  // bulge annihilated exactly
        // G from the right on columns k, k+1; creates the next bulge at (k+2, k).
        const int top = std::min(hi, k + 2);
        for (int i = 0; i <= top; ++i) {
            const cplx a = h(i, k);
            const cplx b = h(i, k + 1);
            h(i, k) = a * c + b * s;
            h(i, k + 1) = -a * std::conj(s) + b * std::conj(c);
        }
        if (k < hi - 1) {
            x = h(k + 1, k);
            y = h(k + 2, k);
        }
    }
}

std::vector<cplx> qr_eigenvalues(ComplexMatrix h) {
    const int n = h.dim();
    const double scale = std::max(1.0, h.max_abs());
    const int max_iters = 200 * n;
    std::vector<cplx> values;
    values.reserve(static_cast<std::size_t>(n));
    int hi = n - 1;
    int iters = 0;
    while (hi >= 0) {
        // Deflate negligible subdiagonals.
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            if (sub <= 1e-300 ||
                sub <= 1e-16 * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)) + 1e-30 * scale)) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            values.push_back(h(hi, hi));
            --hi;
            continue;
        }
        if (lo == hi - 1) {
            const auto pair = eig_2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            values.push_back(pair[0]);
            values.push_back(pair[1]);
            hi = lo - 1;
            continue;
        }
        if (++iters > max_iters)
            throw NoConvergence("eig_general: QR iteration exceeded " + std::to_string(max_iters) +
                                " steps");
        // Wilkinson shift: eigenvalue of the trailing 2x2 closest to h(hi,hi).
        const auto pair = eig_2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
        cplx shift = pair[0];
        if (std::abs(pair[1] - h(hi, hi)) < std::abs(pair[0] - h(hi, hi))) shift = pair[1];
        if (iters % 17 == 0) shift = h(hi, hi) + cplx(std::abs(h(hi, hi - 1)), 0.0);  // stagnation kick
        qr_step(h, lo, hi, shift);
    }
    return values;
}

int rank_with_tol(const ComplexMatrix& m, double tol) {
    const auto sv = singular_values(m);
    int r = 0;
    for (double s : sv)
        if (s > tol) ++r;
    return r;
}

}  // namespace

EigenResult eig_general(const ComplexMatrix& a) {
    const int n = a.dim();
    EigenResult result;
    if (n == 1) {
        result.values = {a(0, 0)};
        result.defect_flags = {false};
        return result;
    }
    if (n == 2) {
        const auto pair = eig_2x2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
        result.values = {pair[0], pair[1]};
    } else {
        ComplexMatrix h = a;
        hessenberg_reduce(h);
        result.values = qr_eigenvalues(std::move(h));
    }
    std::sort(result.values.begin(), result.values.end(), [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });

    // Cluster repeated eigenvalues and compare algebraic vs geometric
    // multiplicity through the rank of (A - lambda I).
    result.defect_flags.assign(result.values.size(), false);
    const double rank_tol = kRankTolFactor * std::max(1.0, a.max_abs());
    std::size_t i = 0;
    while (i < result.values.size()) {
        std::size_t j = i + 1;
        while (j < result.values.size() &&
               std::abs(result.values[j] - result.values[j - 1]) <= kEigClusterRadius)
            ++j;
        const std::size_t mult = j - i;
        if (mult >= 2) {
            cplx center{};
            for (std::size_t k = i; k < j; ++k) center += result.values[k];
            center /= static_cast<double>(mult);
            ComplexMatrix shifted = a - center * ComplexMatrix::identity(n);
            const int geo = n - rank_with_tol(shifted, rank_tol);
            if (geo < static_cast<int>(mult))
                for (std::size_t k = i; k < j; ++k) result.defect_flags[k] = true;
        }
        i = j;
    }
    return result;
}

ComplexMatrix eigenvectors_general(const ComplexMatrix& a, const EigenResult& eig) {
    const int n = a.dim();
    for (bool flag : eig.defect_flags)
        if (flag) throw DefectiveMatrix("eigenvectors_general: defective eigenvalue");
    ComplexMatrix vectors(n);
    const double rank_tol = kRankTolFactor * std::max(1.0, a.max_abs());
    std::size_t i = 0;
    while (i < eig.values.size()) {
        std::size_t j = i + 1;
        while (j < eig.values.size() && std::abs(eig.values[j] - eig.values[j - 1]) <= kEigClusterRadius)
            ++j;
        const int mult = static_cast<int>(j - i);
        cplx center{};
        for (std::size_t k = i; k < j; ++k) center += eig.values[k];
        center /= static_cast<double>(mult);

        // Null space of (A - lambda I): Gram eigenvectors with the smallest
        // residual. The residual is recomputed directly, since the Gram
        // eigenvalues themselves are noise-limited near zero.
        ComplexMatrix shifted = a - center * ComplexMatrix::identity(n);
        ComplexMatrix basis;
        eig_hermitian(shifted.adjoint() * shifted, &basis);
        std::vector<cplx> col(static_cast<std::size_t>(n));
        for (int k = 0; k < mult; ++k) {
            for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = basis(r, k);
            const auto res = shifted.apply(col);
            double res_sq = 0.0;
            for (const cplx& x : res) res_sq += std::norm(x);
            if (std::sqrt(res_sq) > rank_tol)
                throw DefectiveMatrix("eigenvectors_general: null space smaller than multiplicity");
            for (int r = 0; r < n; ++r) vectors(r, static_cast<int>(i) + k) = basis(r, k);
        }
        i = j;
    }
    return vectors;
}

double condition_number(const ComplexMatrix& p) {
    if (!p.is_hermitian()) throw NotHermitian("condition_number: matrix is not Hermitian");
    const auto ev = eig_hermitian(p);
    if (ev.front() <= kPdTol)
        throw NotPositiveDefinite("condition_number: smallest eigenvalue " +
                                  std::to_string(ev.front()));
    return ev.back() / ev.front();
}

ComplexMatrix expm_2x2(const ComplexMatrix& c, double t) {
    if (c.dim() != 2) throw RangeError("expm_2x2: dimension must be 2");
    const cplx mu = 0.5 * c.trace();
    const cplx det = c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
    // N = C - mu I satisfies N^2 = disc I with disc = mu^2 - det.
    const cplx disc = mu * mu - det;
    const cplx z = t * std::sqrt(disc);
    cplx cosh_z, sinhc_z;
    if (std::abs(z) < 1e-4) {
        const cplx z2 = z * z;
        cosh_z = 1.0 + z2 * (0.5 + z2 * (1.0 / 24.0 + z2 / 720.0));
        sinhc_z = 1.0 + z2 * (1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 / 5040.0));
    } else {
        cosh_z = std::cosh(z);
        sinhc_z = std::sinh(z) / z;
    }
    const cplx e = std::exp(-mu * t);
    ComplexMatrix out(2);
    out(0, 0) = e * (cosh_z - sinhc_z * t * (c(0, 0) - mu));
    out(0, 1) = e * (-sinhc_z * t * c(0, 1));
    out(1, 0) = e * (-sinhc_z * t * c(1, 0));
    out(1, 1) = e * (cosh_z - sinhc_z * t * (c(1, 1) - mu));
    return out;
}

double operator_norm_sq(const ComplexMatrix& m) {
    const auto ev = eig_hermitian(m.adjoint() * m);
    return std::max(0.0, ev.back());
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    // Eigenvectors of the Gram matrix are accurate even when its smallest
    // eigenvalues drown in rounding; recover each singular value through the
    // direct residual |M v|, which does not square the conditioning.
    const int n = m.dim();
    ComplexMatrix vectors;
    eig_hermitian(m.adjoint() * m, &vectors);
    std::vector<double> sv(static_cast<std::size_t>(n));
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = vectors(i, k);
        const auto mv = m.apply(v);
        double norm_sq = 0.0;
        for (const cplx& x : mv) norm_sq += std::norm(x);
        sv[static_cast<std::size_t>(k)] = std::sqrt(norm_sq);
    }
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

std::vector<cplx> top_singular_vector(const ComplexMatrix& m) {
    ComplexMatrix vectors;
    const auto ev = eig_hermitian(m.adjoint() * m, &vectors);
    const int n = m.dim();
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = vectors(i, n - 1);
    (void)ev;
    return v;
}

}  // namespace hyporate
