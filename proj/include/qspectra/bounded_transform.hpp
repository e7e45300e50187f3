#pragma once

#include <algorithm>
#include <complex>

#include "qspectra/spectral.hpp"

namespace qspectra {

namespace tol {
/// Contractivity guard for the inverse transform.
inline constexpr double margin = 1e-12;
}  // namespace tol

/// The bounded transform of T: C = (1 + T^*T)^{-1} positive definite and
/// Z = T sqrt(C) a strict contraction with C = 1 - Z^*Z.
template <typename Scalar = double>
struct TransformPair {
    QMatrix<Scalar> T, C, Z;
};

template <typename Scalar>
TransformPair<Scalar> bounded_transform(const QMatrix<Scalar>& t) {
    if (!t.is_square()) throw DimensionMismatch("bounded_transform needs a square matrix");
    const Eigen::Index n = t.rows();
    const QMatrix<Scalar> c =
        inverse<Scalar>(QMatrix<Scalar>::Identity(n) + t.adjoint() * t);
    const QMatrix<Scalar> z = t * sqrt_positive(c);
    return TransformPair<Scalar>{t, c, z};
}

/// Recovers T = Z (sqrt(1 - Z^*Z))^{-1} from a strict contraction.
template <typename Scalar>
QMatrix<Scalar> inverse_transform(const QMatrix<Scalar>& z, Scalar margin = Scalar(tol::margin)) {
    if (!z.is_square()) throw DimensionMismatch("inverse_transform needs a square matrix");
    if (operator_norm(z) >= Scalar(1) - margin) throw NotContractive{};
    const Eigen::Index n = z.rows();
    const QMatrix<Scalar> root = sqrt_positive(QMatrix<Scalar>(QMatrix<Scalar>::Identity(n) - z.adjoint() * z));
    return z * inverse(root);
}

/// Spectral decomposition through the bounded transform: decompose Z_T and
/// push the support forward by F(z) = z (1 - |z|^2)^{-1/2}, keeping the
/// projectors and the left multiplication.
template <typename Scalar>
IqPVM<Scalar> decompose_via_transform(const QMatrix<Scalar>& t,
                                      const Quaternion<Scalar>& unit = Quaternion<Scalar>::unit_i(),
                                      Scalar cluster_tol = Scalar(-1),
                                      Scalar boundary_tol = Scalar(1e-7)) {
    const TransformPair<Scalar> pair = bounded_transform(t);
    IqPVM<Scalar> pvm = spectral_decompose(pair.Z, unit, cluster_tol);
    for (auto& p : pvm.support) {
        const std::complex<Scalar> z(p.alpha, p.beta);
        const Scalar r2 = std::norm(z);
        if (r2 >= (Scalar(1) - boundary_tol) * (Scalar(1) - boundary_tol)) throw SupportOnBoundary{};
        const std::complex<Scalar> f = z / std::sqrt(Scalar(1) - r2);
        p.alpha = f.real();
        p.beta = std::max(f.imag(), Scalar(0));
    }
    // The pushforward can reorder points along the lexicographic order.
    std::vector<size_t> order(pvm.size());
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (pvm.support[a].alpha != pvm.support[b].alpha)
            return pvm.support[a].alpha < pvm.support[b].alpha;
        return pvm.support[a].beta < pvm.support[b].beta;
    });
    IqPVM<Scalar> sorted;
    sorted.unit = pvm.unit;
    sorted.left = pvm.left;
    for (size_t k : order) {
        sorted.support.push_back(pvm.support[k]);
        sorted.projectors.push_back(pvm.projectors[k]);
    }
    return sorted;
}

}  // namespace qspectra
