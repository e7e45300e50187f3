#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <vector>

#include "qspectra/errors.hpp"
#include "qspectra/quaternion.hpp"

namespace qspectra {

namespace tol {
/// Relative singularity threshold for det_c based invertibility decisions.
inline constexpr double sing = 1e-10;
/// Block-symmetry slack when pulling complex matrices back through chi.
inline constexpr double rep = 1e-9;
/// Relative spectral cutoff separating kernel from range.
inline constexpr double kernel = 1e-10;
}  // namespace tol

/// Dense quaternionic matrix acting on H^n by left matrix multiplication,
/// i.e. a right H-linear operator. Stored by its two complex slice
/// components: entry q = a + b*j with a = q0 + q1*i, b = q2 + q3*i.
template <typename Scalar = double>
class QMatrix {
   public:
    using Complex = std::complex<Scalar>;
    using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Quat = Quaternion<Scalar>;

    QMatrix() = default;
    QMatrix(Eigen::Index rows, Eigen::Index cols)
        : a_(ComplexMatrix::Zero(rows, cols)), b_(ComplexMatrix::Zero(rows, cols)) {}
    QMatrix(ComplexMatrix a, ComplexMatrix b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_.rows() != b_.rows() || a_.cols() != b_.cols())
            throw DimensionMismatch("slice components disagree");
    }

    /// Row-major list of quaternion entries.
    QMatrix(Eigen::Index rows, Eigen::Index cols, std::initializer_list<Quat> entries)
        : QMatrix(rows, cols) {
        Eigen::Index idx = 0;
        for (const Quat& q : entries) {
            set(idx / cols, idx % cols, q);
            ++idx;
        }
        if (idx != rows * cols) throw DimensionMismatch("entry list does not fill the matrix");
    }

    static QMatrix Zero(Eigen::Index rows, Eigen::Index cols) { return QMatrix(rows, cols); }
    static QMatrix Identity(Eigen::Index n) {
        return QMatrix(ComplexMatrix::Identity(n, n), ComplexMatrix::Zero(n, n));
    }

    Eigen::Index rows() const { return a_.rows(); }
    Eigen::Index cols() const { return a_.cols(); }
    bool is_square() const { return rows() == cols(); }

    Quat operator()(Eigen::Index r, Eigen::Index c) const {
        return {a_(r, c).real(), a_(r, c).imag(), b_(r, c).real(), b_(r, c).imag()};
    }
    void set(Eigen::Index r, Eigen::Index c, const Quat& q) {
        a_(r, c) = Complex(q.w, q.x);
        b_(r, c) = Complex(q.y, q.z);
    }

    const ComplexMatrix& slice_a() const { return a_; }
    const ComplexMatrix& slice_b() const { return b_; }

    QMatrix operator+(const QMatrix& o) const {
        check_same_shape(o);
        return QMatrix(a_ + o.a_, b_ + o.b_);
    }
    QMatrix operator-(const QMatrix& o) const {
        check_same_shape(o);
        return QMatrix(a_ - o.a_, b_ - o.b_);
    }
    QMatrix operator-() const { return QMatrix(-a_, -b_); }
    QMatrix operator*(Scalar s) const { return QMatrix(a_ * s, b_ * s); }
    QMatrix operator/(Scalar s) const { return QMatrix(a_ / s, b_ / s); }
    friend QMatrix operator*(Scalar s, const QMatrix& m) { return m * s; }

    /// Matrix product; composes the operator actions.
    QMatrix operator*(const QMatrix& o) const {
        if (cols() != o.rows()) throw DimensionMismatch("product shapes");
        return QMatrix(a_ * o.a_ - b_ * o.b_.conjugate(), a_ * o.b_ + b_ * o.a_.conjugate());
    }

    /// Entrywise left multiplication by a quaternion scalar, q*M = diag(q)*M.
    friend QMatrix operator*(const Quat& q, const QMatrix& m) {
        const Complex qa(q.w, q.x), qb(q.y, q.z);
        return QMatrix(qa * m.a_ - qb * m.b_.conjugate(), qa * m.b_ + qb * m.a_.conjugate());
    }
    /// Entrywise right multiplication, M*q = M*diag(q); the right scalar action on vectors.
    QMatrix operator*(const Quat& q) const {
        const Complex qa(q.w, q.x), qb(q.y, q.z);
        return QMatrix(a_ * qa - b_ * std::conj(qb), a_ * qb + b_ * std::conj(qa));
    }

    /// Conjugate transpose.
    QMatrix adjoint() const { return QMatrix(a_.adjoint(), -b_.transpose()); }

    Scalar frobenius_norm() const { return std::sqrt(a_.squaredNorm() + b_.squaredNorm()); }
    Scalar max_abs_entry() const {
        Scalar m = 0;
        for (Eigen::Index c = 0; c < cols(); ++c)
            for (Eigen::Index r = 0; r < rows(); ++r)
                m = std::max(m, std::sqrt(std::norm(a_(r, c)) + std::norm(b_(r, c))));
        return m;
    }
    bool is_zero(Scalar tolerance) const { return frobenius_norm() <= tolerance; }

   private:
    void check_same_shape(const QMatrix& o) const {
        if (rows() != o.rows() || cols() != o.cols()) throw DimensionMismatch("sum shapes");
    }

    ComplexMatrix a_, b_;
};

/// Hermitian quaternionic scalar product of column vectors, <u|v> = u^* v.
template <typename Scalar>
Quaternion<Scalar> inner(const QMatrix<Scalar>& u, const QMatrix<Scalar>& v) {
    if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows())
        throw DimensionMismatch("inner product operands");
    const QMatrix<Scalar> p = u.adjoint() * v;
    return p(0, 0);
}

template <typename Scalar>
Scalar vector_norm(const QMatrix<Scalar>& u) {
    return u.frobenius_norm();
}

/// Rank-one block u * q * v^*.
template <typename Scalar>
QMatrix<Scalar> outer(const QMatrix<Scalar>& u, const Quaternion<Scalar>& q, const QMatrix<Scalar>& v) {
    return (u * q) * v.adjoint();
}

/// The complex adjoint representation chi(M) = [[A, -B], [conj(B), conj(A)]]
/// acting on (x, conj(y)) for u = x + y*j. A real *-algebra homomorphism.
template <typename Scalar>
typename QMatrix<Scalar>::ComplexMatrix chi(const QMatrix<Scalar>& m) {
    using CM = typename QMatrix<Scalar>::ComplexMatrix;
    const Eigen::Index r = m.rows(), c = m.cols();
    CM out(2 * r, 2 * c);
    out.topLeftCorner(r, c) = m.slice_a();
    out.topRightCorner(r, c) = -m.slice_b();
    out.bottomLeftCorner(r, c) = m.slice_b().conjugate();
    out.bottomRightCorner(r, c) = m.slice_a().conjugate();
    return out;
}

/// Inverse of chi on its image; enforces the block symmetry within rep_tol.
template <typename Scalar>
QMatrix<Scalar> chi_inverse(const typename QMatrix<Scalar>::ComplexMatrix& c,
                            Scalar rep_tol = Scalar(tol::rep)) {
    if (c.rows() % 2 != 0 || c.cols() % 2 != 0) throw DimensionMismatch("chi image has even sizes");
    const Eigen::Index r = c.rows() / 2, k = c.cols() / 2;
    const auto a = c.topLeftCorner(r, k);
    const auto nb = c.topRightCorner(r, k);
    const auto bc = c.bottomLeftCorner(r, k);
    const auto ac = c.bottomRightCorner(r, k);
    const Scalar scale = std::max(Scalar(1), c.norm());
    const Scalar residual =
        std::sqrt((a - ac.conjugate()).squaredNorm() + (nb + bc.conjugate()).squaredNorm());
    if (residual > rep_tol * scale) throw NotInRepresentationImage(residual / scale);
    return QMatrix<Scalar>(((a + ac.conjugate()) / Scalar(2)).eval(),
                           ((bc.conjugate() - nb) / Scalar(2)).eval());
}

/// Pulls a complex 2n-vector (x, y) back to the quaternion vector x + conj(y)*j.
template <typename Scalar>
QMatrix<Scalar> pullback_vector(const Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>& v) {
    const Eigen::Index n = v.size() / 2;
    typename QMatrix<Scalar>::ComplexMatrix a = v.head(n), b = v.tail(n).conjugate();
    return QMatrix<Scalar>(std::move(a), std::move(b));
}

/// Determinant of the complex adjoint representation (Study determinant);
/// real and nonnegative up to roundoff.
template <typename Scalar>
Scalar det_c(const QMatrix<Scalar>& m) {
    if (!m.is_square()) throw DimensionMismatch("det_c needs a square matrix");
    return chi(m).partialPivLu().determinant().real();
}

/// Largest singular value of chi(M); the operator norm on H^n.
template <typename Scalar>
Scalar operator_norm(const QMatrix<Scalar>& m) {
    const auto c = chi(m);
    Eigen::SelfAdjointEigenSolver<typename QMatrix<Scalar>::ComplexMatrix> es(c.adjoint() * c,
                                                                              Eigen::EigenvaluesOnly);
    const Scalar top = es.eigenvalues().maxCoeff();
    return top > Scalar(0) ? std::sqrt(top) : Scalar(0);
}

/// Solve-based inverse through the complex representation.
template <typename Scalar>
QMatrix<Scalar> inverse(const QMatrix<Scalar>& m, Scalar sing_tol = Scalar(tol::sing)) {
    if (!m.is_square()) throw DimensionMismatch("inverse needs a square matrix");
    const Eigen::Index n = m.rows();
    const Scalar scale = std::max(m.max_abs_entry(), Scalar(1e-300));
    const Scalar threshold = sing_tol * std::pow(scale, Scalar(2 * n));
    if (std::abs(det_c(m)) <= threshold) throw Singular{};
    const auto c = chi(m);
    typename QMatrix<Scalar>::ComplexMatrix inv =
        c.partialPivLu().solve(QMatrix<Scalar>::ComplexMatrix::Identity(2 * n, 2 * n));
    return chi_inverse<Scalar>(inv);
}

/// Eigen-decomposition of a self-adjoint quaternionic matrix: real eigenvalues
/// in ascending order with an orthonormal quaternionic eigenbasis as columns.
/// Each complex eigenpair of chi(M) appears twice; a rank-revealing H-linear
/// Gram-Schmidt sweep keeps one representative per quaternionic direction,
/// phase-normalized so the dominant entry is real nonnegative.
template <typename Scalar>
struct HermitianEigen {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues;
    QMatrix<Scalar> vectors;  // n x n, columns form the eigenbasis
};

template <typename Scalar>
QMatrix<Scalar> column(const QMatrix<Scalar>& m, Eigen::Index c) {
    return QMatrix<Scalar>(m.slice_a().col(c), m.slice_b().col(c));
}

template <typename Scalar>
void set_column(QMatrix<Scalar>& m, Eigen::Index c, const QMatrix<Scalar>& v) {
    typename QMatrix<Scalar>::ComplexMatrix a = m.slice_a(), b = m.slice_b();
    a.col(c) = v.slice_a();
    b.col(c) = v.slice_b();
    m = QMatrix<Scalar>(std::move(a), std::move(b));
}

/// Index of the entry with the largest norm; earlier index wins near ties.
template <typename Scalar>
Eigen::Index dominant_entry(const QMatrix<Scalar>& v, Scalar tie_rel = Scalar(1e-6)) {
    Eigen::Index best = 0;
    Scalar best_norm = v(0, 0).norm();
    for (Eigen::Index r = 1; r < v.rows(); ++r) {
        const Scalar n = v(r, 0).norm();
        if (n > best_norm * (Scalar(1) + tie_rel)) {
            best = r;
            best_norm = n;
        }
    }
    return best;
}

/// Right-multiplies v by the unit quaternion making its dominant entry real positive.
template <typename Scalar>
QMatrix<Scalar> canonical_quaternion_phase(const QMatrix<Scalar>& v) {
    const Quaternion<Scalar> lead = v(dominant_entry(v), 0);
    const Scalar n = lead.norm();
    if (n <= Scalar(0)) return v;
    return v * (lead.conj() / n);
}

template <typename Scalar>
HermitianEigen<Scalar> hermitian_eigen(const QMatrix<Scalar>& m) {
    if (!m.is_square()) throw DimensionMismatch("hermitian_eigen needs a square matrix");
    const Eigen::Index n = m.rows();
    Eigen::SelfAdjointEigenSolver<typename QMatrix<Scalar>::ComplexMatrix> es(chi(m));
    if (es.info() != Eigen::Success) throw NumericalFailure("hermitian eigensolver failed");

    HermitianEigen<Scalar> out;
    out.eigenvalues.resize(n);
    out.vectors = QMatrix<Scalar>(n, n);
    Eigen::Index selected = 0;
    for (Eigen::Index idx = 0; idx < 2 * n && selected < n; ++idx) {
        QMatrix<Scalar> u = pullback_vector<Scalar>(es.eigenvectors().col(idx).eval());
        for (Eigen::Index s = 0; s < selected; ++s) {
            const QMatrix<Scalar> w = column(out.vectors, s);
            u = u - w * inner(w, u);
        }
        const Scalar res = vector_norm(u);
        if (res > Scalar(1e-3)) {
            set_column(out.vectors, selected, canonical_quaternion_phase(QMatrix<Scalar>(u / res)));
            out.eigenvalues(selected) = es.eigenvalues()(idx);
            ++selected;
        }
    }
    if (selected != n) throw NumericalFailure("quaternionic eigenbasis extraction lost rank");
    return out;
}

/// Positive square root of a positive self-adjoint matrix, via the Hermitian
/// square root of chi(M) pulled back through the representation.
template <typename Scalar>
QMatrix<Scalar> sqrt_positive(const QMatrix<Scalar>& m, Scalar tolerance = Scalar(1e-9)) {
    if (!m.is_square()) throw DimensionMismatch("sqrt_positive needs a square matrix");
    const Scalar scale = std::max(Scalar(1), operator_norm(m));
    if ((m - m.adjoint()).frobenius_norm() > tolerance * scale) throw NotPositive{};
    Eigen::SelfAdjointEigenSolver<typename QMatrix<Scalar>::ComplexMatrix> es(chi(m));
    if (es.info() != Eigen::Success) throw NumericalFailure("hermitian eigensolver failed");
    if (es.eigenvalues().minCoeff() < -tolerance * scale) throw NotPositive{};
    const auto d = es.eigenvalues().cwiseMax(Scalar(0)).cwiseSqrt();
    typename QMatrix<Scalar>::ComplexMatrix r =
        es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    return chi_inverse<Scalar>(r);
}

/// |M| = sqrt(M^* M), computed from the singular values of chi(M): with
/// chi(M) = U S V^H the absolute value is V S V^H, which keeps full accuracy
/// near the kernel where the explicit square M^*M would lose half the digits.
template <typename Scalar>
QMatrix<Scalar> abs_op(const QMatrix<Scalar>& m) {
    if (!m.is_square()) throw DimensionMismatch("abs_op needs a square matrix");
    Eigen::JacobiSVD<typename QMatrix<Scalar>::ComplexMatrix> svd(chi(m), Eigen::ComputeFullV);
    typename QMatrix<Scalar>::ComplexMatrix r = svd.matrixV() *
                                                svd.singularValues().template cast<std::complex<Scalar>>().asDiagonal() *
                                                svd.matrixV().adjoint();
    return chi_inverse<Scalar>(r);
}

/// Flattens H^n into R^{4n} (w, x, y, z blocks per entry).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> to_real_vector(const QMatrix<Scalar>& v) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(4 * v.rows());
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        const auto q = v(r, 0);
        out(4 * r) = q.w;
        out(4 * r + 1) = q.x;
        out(4 * r + 2) = q.y;
        out(4 * r + 3) = q.z;
    }
    return out;
}

template <typename Scalar>
QMatrix<Scalar> from_real_vector(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
    QMatrix<Scalar> out(v.size() / 4, 1);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
        out.set(r, 0, {v(4 * r), v(4 * r + 1), v(4 * r + 2), v(4 * r + 3)});
    return out;
}

/// Matrix of a real-linear map on H^n given by its action, as a 4n x 4n real matrix.
template <typename Scalar, typename Action>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> real_linear_matrix(Eigen::Index n, Action&& act) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(4 * n, 4 * n);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(4 * n);
    for (Eigen::Index c = 0; c < 4 * n; ++c) {
        e(c) = Scalar(1);
        out.col(c) = to_real_vector<Scalar>(act(from_real_vector<Scalar>(e)));
        e(c) = Scalar(0);
    }
    return out;
}

/// Real dimension of the kernel of a real-linear map, rank decision at rel_tol.
template <typename Scalar>
Eigen::Index real_kernel_dimension(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                                   Scalar rel_tol) {
    Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m);
    const auto& s = svd.singularValues();
    const Scalar cutoff = rel_tol * std::max(s.size() > 0 ? s(0) : Scalar(0), Scalar(1));
    Eigen::Index dim = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) <= cutoff) ++dim;
    return dim;
}

/// Orthonormal basis (columns) of the kernel of a real-linear map on H^n.
template <typename Scalar>
std::vector<QMatrix<Scalar>> real_kernel_basis(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, Scalar rel_tol) {
    Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(
        m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const Scalar cutoff = rel_tol * std::max(s.size() > 0 ? s(0) : Scalar(0), Scalar(1));
    std::vector<QMatrix<Scalar>> out;
    for (Eigen::Index k = 0; k < s.size(); ++k)
        if (s(k) <= cutoff) out.push_back(from_real_vector<Scalar>(svd.matrixV().col(k).eval()));
    return out;
}

/// Quaternionic orthonormal kernel basis of a square matrix (via chi + pullback).
template <typename Scalar>
std::vector<QMatrix<Scalar>> kernel_basis(const QMatrix<Scalar>& m, Scalar rel_tol) {
    const auto c = chi(m);
    Eigen::JacobiSVD<typename QMatrix<Scalar>::ComplexMatrix> svd(c, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const Scalar cutoff = rel_tol * std::max(s.size() > 0 ? s(0) : Scalar(0), Scalar(1));
    std::vector<QMatrix<Scalar>> out;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (s(k) > cutoff) continue;
        QMatrix<Scalar> u = pullback_vector<Scalar>(svd.matrixV().col(k).eval());
        for (const auto& w : out) u = u - w * inner(w, u);
        const Scalar res = vector_norm(u);
        if (res > Scalar(1e-3)) out.push_back(canonical_quaternion_phase(QMatrix<Scalar>(u / res)));
    }
    return out;
}

using QMat = QMatrix<double>;

}  // namespace qspectra
