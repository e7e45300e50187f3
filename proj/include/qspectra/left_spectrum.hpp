#pragma once

#include <vector>

#include "qspectra/spectral.hpp"

namespace qspectra {

enum class LeftMembership { resolvent, point };

/// Scale-normalized singularity threshold for det_c(T - L_q).
template <typename Scalar>
Scalar left_membership_threshold(const QMatrix<Scalar>& t, const Quaternion<Scalar>& q,
                                 Scalar sing_tol = Scalar(tol::sing)) {
    const Scalar scale = std::max(Scalar(1), operator_norm(t) + q.norm());
    return sing_tol * std::pow(scale, Scalar(2 * t.rows()));
}

/// Membership of q in the left spectrum of T w.r.t. an associated L, decided
/// by the vanishing of det_c(T - L_q).
template <typename Scalar>
LeftMembership left_membership(const QMatrix<Scalar>& t, const LeftScalarMultiplication<Scalar>& l,
                               const Quaternion<Scalar>& q,
                               const Quaternion<Scalar>& unit = Quaternion<Scalar>::unit_i(),
                               Scalar sing_tol = Scalar(tol::sing)) {
    if (!verify_propL_conditions(t, l, unit)) throw NotAssociatedPair{};
    const Scalar d = std::abs(det_c<Scalar>(t - l.of(q)));
    return d <= left_membership_threshold(t, q, sing_tol) ? LeftMembership::point
                                                          : LeftMembership::resolvent;
}

/// (T - L_q)^{-1} for q in the left resolvent set.
template <typename Scalar>
QMatrix<Scalar> left_resolvent(const QMatrix<Scalar>& t, const LeftScalarMultiplication<Scalar>& l,
                               const Quaternion<Scalar>& q,
                               const Quaternion<Scalar>& unit = Quaternion<Scalar>::unit_i()) {
    if (left_membership(t, l, q, unit) == LeftMembership::point) throw Singular{};
    return inverse<Scalar>(t - l.of(q));
}

/// Resolvent through the functional calculus, integral of z -> (z - q)^{-1}.
template <typename Scalar>
QMatrix<Scalar> resolvent_via_calculus(const IqPVM<Scalar>& pvm, const Quaternion<Scalar>& q) {
    std::vector<Quaternion<Scalar>> phi;
    phi.reserve(pvm.size());
    for (const auto& p : pvm.support) {
        const Quaternion<Scalar> dq = p.value() - q;
        if (dq.norm() == Scalar(0)) throw NotInjective{};
        phi.push_back(dq.inverse());
    }
    return integrate(phi, pvm);
}

/// Right vs. left eigenspace of q: the right one is only a real subspace for
/// non-real q and always sits inside Ker(T - L_q); they agree iff q is real.
template <typename Scalar>
struct EigenspaceComparison {
    Eigen::Index right_dim_real{0};
    Eigen::Index left_dim_real{0};
    bool right_subset_left{false};
    bool equality{false};
};

template <typename Scalar>
EigenspaceComparison<Scalar> eigenspace_compare(const QMatrix<Scalar>& t,
                                                const LeftScalarMultiplication<Scalar>& l,
                                                const SlicePoint<Scalar>& point,
                                                Scalar rank_tol = Scalar(1e-8)) {
    const Quaternion<Scalar> q = point.value();
    const QMatrix<Scalar> shifted = t - l.of(q);
    const auto left_kernel = kernel_basis(shifted, rank_tol);
    if (left_kernel.empty()) throw NotEigenvalue{};

    const auto right_map = real_linear_matrix<Scalar>(
        t.rows(), [&](const QMatrix<Scalar>& u) { return t * u - u * q; });
    const auto right_kernel = real_kernel_basis<Scalar>(right_map, rank_tol);

    EigenspaceComparison<Scalar> out;
    out.left_dim_real = 4 * static_cast<Eigen::Index>(left_kernel.size());
    out.right_dim_real = static_cast<Eigen::Index>(right_kernel.size());
    out.right_subset_left = true;
    for (const auto& u : right_kernel)
        if ((shifted * u).frobenius_norm() > rank_tol * std::max(Scalar(1), t.frobenius_norm()))
            out.right_subset_left = false;
    out.equality = out.right_subset_left && out.left_dim_real == out.right_dim_real;
    return out;
}

/// Left spectrum summary with sampled resolvents.
template <typename Scalar = double>
struct LeftSpectrumReport {
    std::vector<SlicePoint<Scalar>> point;
    std::vector<SlicePoint<Scalar>> residual;    // empty by Theorem E
    std::vector<SlicePoint<Scalar>> continuous;  // empty at finite dimension
    std::vector<std::pair<Quaternion<Scalar>, QMatrix<Scalar>>> resolvent_samples;
};

/// Builds the report from the spectral data: the left point spectrum equals
/// the spherical point spectrum representatives in C_unit^+, and resolvents
/// are sampled on a ring beyond the spectral radius.
template <typename Scalar>
LeftSpectrumReport<Scalar> left_spectrum_report(const QMatrix<Scalar>& t,
                                                const LeftScalarMultiplication<Scalar>& l,
                                                const IqPVM<Scalar>& pvm, int samples = 3) {
    if (!verify_propL_conditions(t, l, pvm.unit)) throw NotAssociatedPair{};
    LeftSpectrumReport<Scalar> out;
    out.point = pvm.support;
    const Scalar radius = operator_norm(t) + Scalar(1);
    for (int s = 0; s < samples; ++s) {
        const Scalar angle = Scalar(2) * Scalar(EIGEN_PI) * Scalar(s) / Scalar(std::max(samples, 1));
        const Quaternion<Scalar> q =
            from_slice(std::complex<Scalar>(radius * std::cos(angle), radius * std::sin(angle)),
                       pvm.unit);
        out.resolvent_samples.emplace_back(q, left_resolvent(t, l, q, pvm.unit));
    }
    return out;
}

}  // namespace qspectra
