#pragma once

#include <vector>

#include "qspectra/left_mult.hpp"
#include "qspectra/qmatrix.hpp"

namespace qspectra {

namespace tol {
/// Relative normality slack ||TT^* - T^*T|| <= normal * ||T||^2.
inline constexpr double normal = 1e-9;
}  // namespace tol

/// The decomposition T = A + J B of a normal operator: A self-adjoint,
/// B positive, J anti self-adjoint unitary, all commuting.
template <typename Scalar = double>
struct SliceDecomposition {
    QMatrix<Scalar> A, B, J;
    Quaternion<Scalar> unit = Quaternion<Scalar>::unit_i();
};

/// Orthonormal C_unit-basis of the complex subspace {u : Ju = u*unit}.
/// Columns of `frame` are the basis vectors; inner products of members lie
/// in the slice plane.
template <typename Scalar = double>
struct ComplexSubspaceBasis {
    Quaternion<Scalar> unit = Quaternion<Scalar>::unit_i();
    QMatrix<Scalar> frame;  // n x n, columns z_1..z_n

    Eigen::Index dimension() const { return frame.rows(); }
    QMatrix<Scalar> vector(Eigen::Index r) const { return column(frame, r); }
};

template <typename Scalar>
bool is_anti_selfadjoint_unitary(const QMatrix<Scalar>& j, Scalar tolerance = Scalar(1e-8)) {
    if (!j.is_square()) return false;
    const auto id = QMatrix<Scalar>::Identity(j.rows());
    return (j.adjoint() + j).frobenius_norm() <= tolerance * std::max(Scalar(1), j.frobenius_norm()) &&
           (j.adjoint() * j - id).frobenius_norm() <= tolerance * Scalar(j.rows());
}

/// Basis of H_+^{J,unit} from the kernel of the real-linear map u -> Ju - u*unit.
template <typename Scalar>
ComplexSubspaceBasis<Scalar> complex_subspace_basis(const QMatrix<Scalar>& j,
                                                    const Quaternion<Scalar>& unit) {
    if (!unit.is_imaginary_unit()) throw BadAuxiliaryUnit{};
    if (!is_anti_selfadjoint_unitary(j)) throw NotAntiUnitary{};
    const Eigen::Index n = j.rows();
    const auto map = real_linear_matrix<Scalar>(
        n, [&](const QMatrix<Scalar>& u) { return j * u - u * unit; });
    const auto kernel = real_kernel_basis<Scalar>(map, Scalar(1e-8));
    if (static_cast<Eigen::Index>(kernel.size()) != 2 * n) throw NotAntiUnitary{};

    // The kernel is a C_unit-space of complex dimension n; slice-linear
    // Gram-Schmidt keeps one vector per complex direction.
    std::vector<QMatrix<Scalar>> basis;
    for (const auto& cand : kernel) {
        QMatrix<Scalar> u = cand;
        for (const auto& z : basis) u = u - z * from_slice(slice_component(inner(z, u), unit), unit);
        const Scalar res = vector_norm(u);
        if (res > Scalar(1e-4)) basis.push_back(QMatrix<Scalar>(u / res));
        if (static_cast<Eigen::Index>(basis.size()) == n) break;
    }
    if (static_cast<Eigen::Index>(basis.size()) != n)
        throw NumericalFailure("complex subspace basis extraction lost rank");
    QMatrix<Scalar> frame(n, n);
    for (Eigen::Index c = 0; c < n; ++c) set_column(frame, c, basis[static_cast<size_t>(c)]);
    return ComplexSubspaceBasis<Scalar>{unit, std::move(frame)};
}

/// Validates externally supplied basis vectors (used to pin a specific basis).
template <typename Scalar>
ComplexSubspaceBasis<Scalar> make_subspace_basis(const std::vector<QMatrix<Scalar>>& vectors,
                                                 const QMatrix<Scalar>& j, const Quaternion<Scalar>& unit,
                                                 Scalar tolerance = Scalar(1e-8)) {
    const Eigen::Index n = j.rows();
    if (static_cast<Eigen::Index>(vectors.size()) != n) throw DimensionMismatch("basis size");
    QMatrix<Scalar> frame(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const auto& z = vectors[static_cast<size_t>(c)];
        if ((j * z - z * unit).frobenius_norm() > tolerance) throw NotAntiUnitary{};
        set_column(frame, c, z);
    }
    return ComplexSubspaceBasis<Scalar>{unit, std::move(frame)};
}

template <typename Scalar>
typename QMatrix<Scalar>::ComplexMatrix to_slice_matrix(const QMatrix<Scalar>& m,
                                                        const Quaternion<Scalar>& unit) {
    typename QMatrix<Scalar>::ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) out(r, c) = slice_component(m(r, c), unit);
    return out;
}

template <typename Scalar>
QMatrix<Scalar> from_slice_matrix(const typename QMatrix<Scalar>::ComplexMatrix& m,
                                  const Quaternion<Scalar>& unit) {
    QMatrix<Scalar> out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) out.set(r, c, from_slice(std::complex<Scalar>(m(r, c)), unit));
    return out;
}

/// Matrix of T restricted to H_+ in the given basis: (T_+)_{rs} = <z_r | T z_s>.
template <typename Scalar>
typename QMatrix<Scalar>::ComplexMatrix restrict_to_plus(const QMatrix<Scalar>& t,
                                                         const ComplexSubspaceBasis<Scalar>& basis,
                                                         Scalar tolerance = Scalar(1e-8)) {
    const QMatrix<Scalar> gram = basis.frame.adjoint() * (t * basis.frame);
    const auto out = to_slice_matrix(gram, basis.unit);
    // T must preserve H_+: the slice coordinates have to reproduce T on the basis.
    const QMatrix<Scalar> reconstructed = basis.frame * from_slice_matrix<Scalar>(out, basis.unit);
    const Scalar scale = std::max(Scalar(1), t.frobenius_norm());
    if ((t * basis.frame - reconstructed).frobenius_norm() > tolerance * scale * Scalar(10))
        throw DoesNotCommuteWithJ{};
    return out;
}

/// The unique right H-linear extension of a complex operator on H_+ to H^n.
template <typename Scalar>
QMatrix<Scalar> extend_complex_operator(const typename QMatrix<Scalar>::ComplexMatrix& m_plus,
                                        const ComplexSubspaceBasis<Scalar>& basis,
                                        const Quaternion<Scalar>& aux_unit) {
    const Quaternion<Scalar>& unit = basis.unit;
    if (!aux_unit.is_imaginary_unit() || (unit * aux_unit + aux_unit * unit).norm() > Scalar(tol::unit))
        throw BadAuxiliaryUnit{};
    if (m_plus.rows() != basis.dimension() || m_plus.cols() != basis.dimension())
        throw DimensionMismatch("restricted operator shape");
    return basis.frame * from_slice_matrix<Scalar>(m_plus, unit) * basis.frame.adjoint();
}

/// Slice decomposition of a normal matrix. A and B are the canonical
/// formulas; J is the quotient (T - A) B^+ on the range of B, completed on
/// Ker(B) by J w = w*unit over an eigenbasis of A restricted to the kernel.
template <typename Scalar>
SliceDecomposition<Scalar> decompose(const QMatrix<Scalar>& t,
                                     const Quaternion<Scalar>& unit = Quaternion<Scalar>::unit_i(),
                                     Scalar normal_tol = Scalar(tol::normal),
                                     Scalar kernel_tol = Scalar(tol::kernel)) {
    if (!t.is_square()) throw DimensionMismatch("decompose needs a square matrix");
    if (!unit.is_imaginary_unit()) throw BadAuxiliaryUnit{};
    const Scalar op = operator_norm(t);
    const QMatrix<Scalar> comm = t * t.adjoint() - t.adjoint() * t;
    if (operator_norm(comm) > normal_tol * std::max(op * op, Scalar(1e-30))) throw NotNormal{};

    const Eigen::Index n = t.rows();
    const QMatrix<Scalar> a = (t + t.adjoint()) / Scalar(2);
    const QMatrix<Scalar> b = abs_op<Scalar>(QMatrix<Scalar>((t - t.adjoint()) / Scalar(2)));

    // Kernel detection is relative to the scale of T, not of B: for a
    // self-adjoint T the whole of B is roundoff noise.
    const auto eig = hermitian_eigen(b);
    const Scalar cutoff = kernel_tol * std::max(op, Scalar(1e-300));

    QMatrix<Scalar> b_pinv(n, n);
    std::vector<QMatrix<Scalar>> kernel_vectors;
    for (Eigen::Index m = 0; m < n; ++m) {
        const QMatrix<Scalar> w = column(eig.vectors, m);
        if (eig.eigenvalues(m) > cutoff)
            b_pinv = b_pinv + outer(w, Quaternion<Scalar>(Scalar(1) / eig.eigenvalues(m)), w);
        else
            kernel_vectors.push_back(w);
    }

    QMatrix<Scalar> j = (t - a) * b_pinv;
    if (!kernel_vectors.empty()) {
        // A preserves Ker(B); its eigenbasis there fixes J deterministically.
        const Eigen::Index k = static_cast<Eigen::Index>(kernel_vectors.size());
        QMatrix<Scalar> frame(n, k);
        for (Eigen::Index c = 0; c < k; ++c) set_column(frame, c, kernel_vectors[static_cast<size_t>(c)]);
        const auto a_restricted = hermitian_eigen(QMatrix<Scalar>(frame.adjoint() * a * frame));
        for (Eigen::Index m = 0; m < k; ++m) {
            const QMatrix<Scalar> w = canonical_quaternion_phase(
                QMatrix<Scalar>(frame * column(a_restricted.vectors, m)));
            j = j + outer(w, unit, w);
        }
    }
    return SliceDecomposition<Scalar>{a, b, j, unit};
}

}  // namespace qspectra
