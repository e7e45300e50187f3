#pragma once

#include <utility>
#include <vector>

#include "qspectra/qmatrix.hpp"

namespace qspectra {

namespace tol {
/// Orthonormality slack accepted by from_basis.
inline constexpr double orth = 1e-9;
/// Slack on the defining relations of a left scalar multiplication.
inline constexpr double left_mult = 1e-9;
}  // namespace tol

namespace detail {

/// Rank-revealing quaternionic Gram-Schmidt; keeps directions with residual
/// above drop_tol relative to the input norms.
template <typename Scalar>
std::vector<QMatrix<Scalar>> h_orthonormalize(const std::vector<QMatrix<Scalar>>& vectors,
                                              Scalar drop_tol = Scalar(1e-8)) {
    std::vector<QMatrix<Scalar>> out;
    for (const auto& v : vectors) {
        QMatrix<Scalar> u = v;
        for (const auto& w : out) u = u - w * inner(w, u);
        const Scalar res = vector_norm(u);
        if (res > drop_tol) out.push_back(QMatrix<Scalar>(u / res));
    }
    return out;
}

/// Orthonormal basis (as matrix columns) of the orthogonal complement of
/// `span` inside H^m, where span holds orthonormal columns.
template <typename Scalar>
QMatrix<Scalar> orthogonal_complement(const std::vector<QMatrix<Scalar>>& span, Eigen::Index m) {
    std::vector<QMatrix<Scalar>> basis;
    for (Eigen::Index r = 0; r < m; ++r) {
        QMatrix<Scalar> e(m, 1);
        e.set(r, 0, Quaternion<Scalar>::one());
        for (const auto& w : span) e = e - w * inner(w, e);
        basis.push_back(e);
    }
    auto kept = h_orthonormalize(basis, Scalar(1e-7));
    QMatrix<Scalar> out(m, static_cast<Eigen::Index>(kept.size()));
    for (Eigen::Index c = 0; c < out.cols(); ++c) set_column(out, c, kept[static_cast<size_t>(c)]);
    return out;
}

}  // namespace detail

/// A real *-algebra homomorphism q -> L_q into the bounded operators of H^n,
/// stored by the generator images L_i and L_j; L_k = L_i L_j and
/// L_q = q0 1 + q1 L_i + q2 L_j + q3 L_k.
template <typename Scalar = double>
class LeftScalarMultiplication {
   public:
    using Quat = Quaternion<Scalar>;

    LeftScalarMultiplication() = default;
    LeftScalarMultiplication(QMatrix<Scalar> li, QMatrix<Scalar> lj)
        : li_(std::move(li)), lj_(std::move(lj)), lk_(li_ * lj_) {
        if (!li_.is_square() || li_.rows() != lj_.rows() || lj_.rows() != lj_.cols())
            throw DimensionMismatch("left multiplication generators");
    }

    /// The multiplication induced by the standard basis: L_q = q entrywise.
    static LeftScalarMultiplication standard(Eigen::Index n) {
        const auto id = QMatrix<Scalar>::Identity(n);
        return LeftScalarMultiplication(Quat::unit_i() * id, Quat::unit_j() * id);
    }

    Eigen::Index dimension() const { return li_.rows(); }
    const QMatrix<Scalar>& li() const { return li_; }
    const QMatrix<Scalar>& lj() const { return lj_; }
    const QMatrix<Scalar>& lk() const { return lk_; }

    QMatrix<Scalar> of(const Quat& q) const {
        return QMatrix<Scalar>::Identity(dimension()) * q.w + li_ * q.x + lj_ * q.y + lk_ * q.z;
    }

   private:
    QMatrix<Scalar> li_, lj_, lk_;
};

/// The left scalar multiplication induced by a Hilbert basis N of H^n:
/// (L_q)_{rs} = sum_z z_r q conj(z_s), so that L_q z = z q for z in N.
template <typename Scalar>
LeftScalarMultiplication<Scalar> from_basis(const std::vector<QMatrix<Scalar>>& basis,
                                            Scalar orth_tol = Scalar(tol::orth)) {
    if (basis.empty()) throw DimensionMismatch("empty basis");
    const Eigen::Index n = basis.front().rows();
    if (static_cast<Eigen::Index>(basis.size()) != n)
        throw NotOrthonormal{};
    for (size_t a = 0; a < basis.size(); ++a) {
        if (basis[a].rows() != n || basis[a].cols() != 1) throw DimensionMismatch("basis vector shape");
        for (size_t b = 0; b < basis.size(); ++b) {
            const Quaternion<Scalar> g = inner(basis[a], basis[b]);
            const Quaternion<Scalar> want = a == b ? Quaternion<Scalar>::one() : Quaternion<Scalar>::zero();
            if ((g - want).norm() > orth_tol) throw NotOrthonormal{};
        }
    }
    QMatrix<Scalar> li(n, n), lj(n, n);
    for (const auto& z : basis) {
        li = li + outer(z, Quaternion<Scalar>::unit_i(), z);
        lj = lj + outer(z, Quaternion<Scalar>::unit_j(), z);
    }
    return LeftScalarMultiplication<Scalar>(std::move(li), std::move(lj));
}

/// Algebraic test for the generator images of a left scalar multiplication:
/// L_i^2 = L_j^2 = -1, L_i L_j = -L_j L_i, L_i^* = -L_i, L_j^* = -L_j.
template <typename Scalar>
bool is_left_scalar_multiplication(const QMatrix<Scalar>& li, const QMatrix<Scalar>& lj,
                                   Scalar tolerance = Scalar(tol::left_mult)) {
    if (!li.is_square() || li.rows() != lj.rows() || !lj.is_square()) return false;
    const auto id = QMatrix<Scalar>::Identity(li.rows());
    const Scalar scale = std::max({Scalar(1), li.frobenius_norm(), lj.frobenius_norm()});
    const Scalar bound = tolerance * scale * scale;
    return (li * li + id).frobenius_norm() <= bound && (lj * lj + id).frobenius_norm() <= bound &&
           (li * lj + lj * li).frobenius_norm() <= bound &&
           (li.adjoint() + li).frobenius_norm() <= tolerance * scale &&
           (lj.adjoint() + lj).frobenius_norm() <= tolerance * scale;
}

namespace detail {

/// One step of the constructive basis extraction: a unit z with L_q z = z q,
/// found inside the fixed subspace of L_k and straightened by L_i.
template <typename Scalar>
QMatrix<Scalar> fixed_vector(const LeftScalarMultiplication<Scalar>& l) {
    const Eigen::Index m = l.dimension();
    const Quaternion<Scalar> k = Quaternion<Scalar>::unit_k();
    // Scan a real coordinate basis of H^m projected onto {x : L_k x = x k};
    // the projection covers half of R^{4m}, so some candidate has norm >= 1/sqrt(2).
    const Quaternion<Scalar> axes[4] = {Quaternion<Scalar>::one(), Quaternion<Scalar>::unit_i(),
                                        Quaternion<Scalar>::unit_j(), Quaternion<Scalar>::unit_k()};
    QMatrix<Scalar> x(m, 1);
    Scalar best = Scalar(-1);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (const auto& axis : axes) {
            QMatrix<Scalar> e(m, 1);
            e.set(r, 0, axis);
            const QMatrix<Scalar> cand = (e - (l.lk() * e) * k) / Scalar(2);
            const Scalar n = vector_norm(cand);
            if (n > best) {
                best = n;
                x = QMatrix<Scalar>(cand / n);
            }
        }
    }
    if (best <= Scalar(1e-8)) throw NotLeftScalarMultiplication{};
    // z = x - L_i x i works unless L_i x = -x i; then x k does.
    const Quaternion<Scalar> i = Quaternion<Scalar>::unit_i();
    QMatrix<Scalar> z = x - (l.li() * x) * i;
    const QMatrix<Scalar> xk = x * k;
    const QMatrix<Scalar> zk = xk - (l.li() * xk) * i;
    if (vector_norm(zk) > vector_norm(z)) z = zk;
    const Scalar n = vector_norm(z);
    if (n <= Scalar(1e-8)) throw NotLeftScalarMultiplication{};
    return QMatrix<Scalar>(z / n);
}

template <typename Scalar>
LeftScalarMultiplication<Scalar> restrict_left_mult(const LeftScalarMultiplication<Scalar>& l,
                                                    const QMatrix<Scalar>& frame) {
    return LeftScalarMultiplication<Scalar>(frame.adjoint() * l.li() * frame,
                                            frame.adjoint() * l.lj() * frame);
}

}  // namespace detail

/// Constructive converse of from_basis: an orthonormal basis N with
/// L_q z = z q for every z in N, obtained by repeating the fixed-vector step
/// on shrinking orthogonal complements.
template <typename Scalar>
std::vector<QMatrix<Scalar>> basis_from_left_mult(const LeftScalarMultiplication<Scalar>& l,
                                                  Scalar tolerance = Scalar(tol::left_mult)) {
    if (!is_left_scalar_multiplication(l.li(), l.lj(), tolerance)) throw NotLeftScalarMultiplication{};
    const Eigen::Index n = l.dimension();
    std::vector<QMatrix<Scalar>> basis;
    QMatrix<Scalar> frame = QMatrix<Scalar>::Identity(n);
    for (Eigen::Index step = 0; step < n; ++step) {
        const auto restricted = detail::restrict_left_mult(l, frame);
        const QMatrix<Scalar> zc = detail::fixed_vector(restricted);
        basis.push_back(frame * zc);
        if (step + 1 < n) {
            const auto comp = detail::orthogonal_complement<Scalar>({zc}, frame.cols());
            frame = frame * comp;
        }
    }
    return basis;
}

}  // namespace qspectra
