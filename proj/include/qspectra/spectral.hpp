#pragma once

#include <algorithm>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "qspectra/left_mult.hpp"
#include "qspectra/qmatrix.hpp"
#include "qspectra/slice_decomp.hpp"

namespace qspectra {

/// Finite-support intertwining quaternionic projection-valued measure: the
/// spectral data (P, L) of a normal matrix over the closed upper slice
/// half-plane C_unit^+.
template <typename Scalar = double>
struct IqPVM {
    Quaternion<Scalar> unit = Quaternion<Scalar>::unit_i();
    std::vector<SlicePoint<Scalar>> support;
    std::vector<QMatrix<Scalar>> projectors;
    LeftScalarMultiplication<Scalar> left;

    Eigen::Index dimension() const { return projectors.empty() ? 0 : projectors.front().rows(); }
    size_t size() const { return support.size(); }
};

/// mu_u({p}) = <u|P({p})u>, a finitely supported positive measure.
template <typename Scalar = double>
struct ScalarSpectralMeasure {
    std::vector<Scalar> weights;  // aligned with the pvm support
    Scalar total_mass() const { return std::accumulate(weights.begin(), weights.end(), Scalar(0)); }
};

/// nu_{u,v}({p}) = <u|P({p})v>, a finitely supported quaternion-valued measure.
template <typename Scalar = double>
struct QuaternionSpectralMeasure {
    std::vector<Quaternion<Scalar>> values;  // aligned with the pvm support
};

template <typename Scalar>
Quaternion<Scalar> point_value(const SlicePoint<Scalar>& p) {
    return p.value();
}

namespace detail {

/// Quarter-turn slice phase convention for the assembled eigenbasis vectors:
/// the slice component of the dominant entry is made real nonnegative; when
/// that entry carries a wedge component, the vector gets one extra turn by
/// the slice unit.
template <typename Scalar>
QMatrix<Scalar> canonical_slice_phase(const QMatrix<Scalar>& v, const Quaternion<Scalar>& unit) {
    const Eigen::Index r = dominant_entry(v);
    const Quaternion<Scalar> lead = v(r, 0);
    const Scalar lead_norm = lead.norm();
    if (lead_norm <= Scalar(0)) return v;
    const std::complex<Scalar> a = slice_component(lead, unit);
    const Quaternion<Scalar> jmath = orthogonal_unit(unit);
    const std::complex<Scalar> b = slice_component(lead * (-jmath), unit);
    QMatrix<Scalar> out = v;
    if (std::abs(a) > Scalar(1e-12) * lead_norm) {
        out = out * from_slice(std::complex<Scalar>(std::conj(a) / std::abs(a)), unit);
        if (std::abs(b) > Scalar(1e-7) * lead_norm) out = out * unit;
    } else {
        out = out * from_slice(std::complex<Scalar>(b / std::abs(b)), unit);
    }
    return out;
}

/// Single-linkage clustering of points in the plane.
template <typename Scalar>
std::vector<std::vector<Eigen::Index>> single_linkage(const std::vector<std::complex<Scalar>>& pts,
                                                      Scalar tolerance) {
    const Eigen::Index m = static_cast<Eigen::Index>(pts.size());
    std::vector<Eigen::Index> parent(m);
    std::iota(parent.begin(), parent.end(), Eigen::Index(0));
    std::function<Eigen::Index(Eigen::Index)> find = [&](Eigen::Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Eigen::Index p = 0; p < m; ++p)
        for (Eigen::Index q = p + 1; q < m; ++q)
            if (std::abs(pts[p] - pts[q]) <= tolerance) parent[find(p)] = find(q);
    std::vector<std::vector<Eigen::Index>> clusters;
    std::vector<Eigen::Index> root_to_cluster(m, -1);
    for (Eigen::Index p = 0; p < m; ++p) {
        const Eigen::Index r = find(p);
        if (root_to_cluster[r] < 0) {
            root_to_cluster[r] = static_cast<Eigen::Index>(clusters.size());
            clusters.emplace_back();
        }
        clusters[static_cast<size_t>(root_to_cluster[r])].push_back(p);
    }
    return clusters;
}

}  // namespace detail

/// The iqPVM of a normal matrix: slice-decompose, restrict to H_+, unitarily
/// diagonalize the complex restriction, cluster eigenvalues, extend the
/// spectral projectors back to H^n and induce L from the eigenbasis.
/// cluster_tol <= 0 selects the default 1e-8 * ||T||.
template <typename Scalar>
IqPVM<Scalar> spectral_decompose(const QMatrix<Scalar>& t,
                                 const Quaternion<Scalar>& unit = Quaternion<Scalar>::unit_i(),
                                 Scalar cluster_tol = Scalar(-1),
                                 Scalar normal_tol = Scalar(tol::normal)) {
    const Eigen::Index n = t.rows();
    const SliceDecomposition<Scalar> sd = decompose(t, unit, normal_tol);
    const ComplexSubspaceBasis<Scalar> basis = complex_subspace_basis(sd.J, unit);
    const auto t_plus = restrict_to_plus(t, basis);

    Eigen::ComplexSchur<typename QMatrix<Scalar>::ComplexMatrix> schur(t_plus);
    if (schur.info() != Eigen::Success) throw NumericalFailure("complex Schur decomposition failed");
    const Scalar op = operator_norm(t);
    const auto strict = schur.matrixT().template triangularView<Eigen::StrictlyUpper>();
    if (typename QMatrix<Scalar>::ComplexMatrix(strict).norm() > Scalar(1e-7) * std::max(op, Scalar(1)))
        throw NumericalFailure("Schur form of the normal restriction is not diagonal");

    std::vector<std::complex<Scalar>> eigenvalues(static_cast<size_t>(n));
    for (Eigen::Index m = 0; m < n; ++m) eigenvalues[static_cast<size_t>(m)] = schur.matrixT()(m, m);

    if (cluster_tol <= Scalar(0)) cluster_tol = Scalar(1e-8) * std::max(op, Scalar(1e-12));
    auto clusters = detail::single_linkage(eigenvalues, cluster_tol);

    // A split whose gap is within one decade of the tolerance is unstable.
    Scalar min_gap = std::numeric_limits<Scalar>::infinity();
    for (size_t a = 0; a < clusters.size(); ++a)
        for (size_t b = a + 1; b < clusters.size(); ++b)
            for (Eigen::Index p : clusters[a])
                for (Eigen::Index q : clusters[b])
                    min_gap = std::min(min_gap, std::abs(eigenvalues[static_cast<size_t>(p)] -
                                                         eigenvalues[static_cast<size_t>(q)]));
    if (clusters.size() > 1 && min_gap < Scalar(10) * cluster_tol)
        throw ClusterAmbiguity(static_cast<double>(min_gap), static_cast<double>(cluster_tol));

    std::sort(clusters.begin(), clusters.end(), [&](const auto& lhs, const auto& rhs) {
        const auto& a = eigenvalues[static_cast<size_t>(lhs.front())];
        const auto& b = eigenvalues[static_cast<size_t>(rhs.front())];
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    // Eigenbasis of T_+ viewed in H^n, with the canonical slice phase.
    const QMatrix<Scalar> w_all =
        basis.frame * from_slice_matrix<Scalar>(schur.matrixU(), unit);
    std::vector<QMatrix<Scalar>> eigenbasis;
    eigenbasis.reserve(static_cast<size_t>(n));
    for (Eigen::Index m = 0; m < n; ++m)
        eigenbasis.push_back(detail::canonical_slice_phase(column(w_all, m), unit));

    IqPVM<Scalar> pvm;
    pvm.unit = unit;
    for (const auto& cluster : clusters) {
        std::complex<Scalar> mean(0, 0);
        QMatrix<Scalar> projector(n, n);
        for (Eigen::Index m : cluster) {
            mean += eigenvalues[static_cast<size_t>(m)];
            const auto& w = eigenbasis[static_cast<size_t>(m)];
            projector = projector + outer(w, Quaternion<Scalar>::one(), w);
        }
        mean /= Scalar(cluster.size());
        pvm.support.push_back(
            SlicePoint<Scalar>{mean.real(), std::max(mean.imag(), Scalar(0)), unit});
        pvm.projectors.push_back(std::move(projector));
    }
    pvm.left = from_basis(eigenbasis);
    return pvm;
}

/// sum_p L_p P({p}); recovers the operator the pvm came from.
template <typename Scalar>
QMatrix<Scalar> reconstruct(const IqPVM<Scalar>& pvm) {
    QMatrix<Scalar> out(pvm.dimension(), pvm.dimension());
    for (size_t k = 0; k < pvm.size(); ++k)
        out = out + pvm.left.of(pvm.support[k].value()) * pvm.projectors[k];
    return out;
}

/// Spectrum split at finite dimension: every support point is a spherical
/// eigenvalue; residual and continuous parts are empty.
template <typename Scalar = double>
struct SpectrumClassification {
    std::vector<SlicePoint<Scalar>> point;
    std::vector<SlicePoint<Scalar>> residual;    // empty by Theorem A(d)
    std::vector<SlicePoint<Scalar>> continuous;  // empty at finite dimension
    CircularSet<Scalar> spherical;               // circularization of the point set
};

template <typename Scalar>
SpectrumClassification<Scalar> classify_spectrum(const IqPVM<Scalar>& pvm) {
    SpectrumClassification<Scalar> out;
    out.point = pvm.support;
    out.spherical = circularize(pvm.support);
    return out;
}

/// Delta_q(T) = T^2 - T (2 Re q) + |q|^2; its kernel is the eigensphere subspace.
template <typename Scalar>
QMatrix<Scalar> delta(const QMatrix<Scalar>& t, const Quaternion<Scalar>& q) {
    return t * t - t * (Scalar(2) * q.re()) + QMatrix<Scalar>::Identity(t.rows()) * q.squared_norm();
}

/// Integral of a function given by its values on the support:
/// integral = sum_p L_{phi(p)} P({p}).
template <typename Scalar>
QMatrix<Scalar> integrate(const std::vector<Quaternion<Scalar>>& phi, const IqPVM<Scalar>& pvm) {
    if (phi.size() != pvm.size()) throw MissingSupportPoint{};
    QMatrix<Scalar> out(pvm.dimension(), pvm.dimension());
    for (size_t k = 0; k < pvm.size(); ++k) out = out + pvm.left.of(phi[k]) * pvm.projectors[k];
    return out;
}

/// (integral of phi)^{-1} = integral of 1/phi; requires phi nonzero on the support.
template <typename Scalar>
QMatrix<Scalar> invert_via_calculus(const std::vector<Quaternion<Scalar>>& phi,
                                    const IqPVM<Scalar>& pvm) {
    if (phi.size() != pvm.size()) throw MissingSupportPoint{};
    std::vector<Quaternion<Scalar>> inv(phi.size());
    for (size_t k = 0; k < phi.size(); ++k) {
        if (phi[k].norm() == Scalar(0)) throw NotInjective{};
        inv[k] = phi[k].inverse();
    }
    return integrate(inv, pvm);
}

template <typename Scalar>
ScalarSpectralMeasure<Scalar> scalar_measure(const QMatrix<Scalar>& u, const IqPVM<Scalar>& pvm) {
    if (u.rows() != pvm.dimension() || u.cols() != 1) throw DimensionMismatch("measure vector");
    ScalarSpectralMeasure<Scalar> out;
    for (const auto& p : pvm.projectors) out.weights.push_back(inner(u, p * u).re());
    return out;
}

template <typename Scalar>
QuaternionSpectralMeasure<Scalar> quaternion_measure(const QMatrix<Scalar>& u, const QMatrix<Scalar>& v,
                                                     const IqPVM<Scalar>& pvm) {
    if (u.rows() != pvm.dimension() || v.rows() != pvm.dimension() || u.cols() != 1 || v.cols() != 1)
        throw DimensionMismatch("measure vectors");
    QuaternionSpectralMeasure<Scalar> out;
    for (const auto& p : pvm.projectors) out.values.push_back(inner(u, p * v));
    return out;
}

/// Residuals of the three associated-pair conditions: (i) L_unit commutes
/// with T, (ii) L_w T = T^* L_w for some imaginary w anticommuting with the
/// unit, (iii) -L_unit (T - T^*) >= 0.
template <typename Scalar>
struct PropLResiduals {
    Scalar commute{0};
    Scalar swap{0};
    Scalar positive{0};
    Scalar max() const { return std::max({commute, swap, positive}); }
};

template <typename Scalar>
Scalar frobenius_inner(const QMatrix<Scalar>& a, const QMatrix<Scalar>& b) {
    return a.slice_a().conjugate().cwiseProduct(b.slice_a()).sum().real() +
           a.slice_b().conjugate().cwiseProduct(b.slice_b()).sum().real();
}

template <typename Scalar>
PropLResiduals<Scalar> prop_l_residuals(const QMatrix<Scalar>& t,
                                        const LeftScalarMultiplication<Scalar>& l,
                                        const Quaternion<Scalar>& unit = Quaternion<Scalar>::unit_i()) {
    const Scalar scale = std::max(Scalar(1), t.frobenius_norm());
    PropLResiduals<Scalar> res;
    const QMatrix<Scalar> li = l.of(unit);
    res.commute = (li * t - t * li).frobenius_norm() / scale;

    // Condition (ii) quantifies over the circle of units anticommuting with
    // `unit`; the minimum of ||a X + b Y|| over a^2 + b^2 = 1 is the smallest
    // eigenvalue of the 2x2 Gram matrix of (X, Y).
    const Quaternion<Scalar> jm = orthogonal_unit(unit);
    const Quaternion<Scalar> km = unit * jm;
    const QMatrix<Scalar> x = l.of(jm) * t - t.adjoint() * l.of(jm);
    const QMatrix<Scalar> y = l.of(km) * t - t.adjoint() * l.of(km);
    const Scalar gxx = frobenius_inner(x, x), gyy = frobenius_inner(y, y), gxy = frobenius_inner(x, y);
    const Scalar half_tr = (gxx + gyy) / Scalar(2);
    const Scalar disc = std::sqrt(std::max(Scalar(0), (gxx - gyy) * (gxx - gyy) / Scalar(4) + gxy * gxy));
    res.swap = std::sqrt(std::max(Scalar(0), half_tr - disc)) / scale;

    const QMatrix<Scalar> neg = QMatrix<Scalar>(-(li * (t - t.adjoint())));
    const Scalar asym = (neg - neg.adjoint()).frobenius_norm();
    Eigen::SelfAdjointEigenSolver<typename QMatrix<Scalar>::ComplexMatrix> es(chi(neg),
                                                                              Eigen::EigenvaluesOnly);
    res.positive = std::max({Scalar(0), asym / scale, -es.eigenvalues().minCoeff() / scale});
    return res;
}

template <typename Scalar>
bool verify_propL_conditions(const QMatrix<Scalar>& t, const LeftScalarMultiplication<Scalar>& l,
                             const Quaternion<Scalar>& unit = Quaternion<Scalar>::unit_i(),
                             Scalar tolerance = Scalar(1e-8)) {
    return prop_l_residuals(t, l, unit).max() <= tolerance;
}

/// One cyclic summand of the spectral L^2 model: the closure of
/// {P({p}) z q : p, q} for a generator z with L_q z = z q.
template <typename Scalar = double>
struct CyclicBlock {
    QMatrix<Scalar> generator;              // n x 1 unit vector
    ScalarSpectralMeasure<Scalar> measure;  // mu_z, aligned with the pvm support
    QMatrix<Scalar> isometry;               // n x m, column t = P_k z / sqrt(mu_k)
    std::vector<size_t> support_indices;    // support point of each column
};

/// Orthogonal decomposition after Theorem B: repeatedly pick a generator in
/// the remaining complement and split off its cyclic subspace. Conjugating
/// any integral by the assembled isometries yields pointwise multiplication.
template <typename Scalar>
std::vector<CyclicBlock<Scalar>> cyclic_l2_model(const IqPVM<Scalar>& pvm) {
    const Eigen::Index n = pvm.dimension();
    std::vector<CyclicBlock<Scalar>> blocks;
    QMatrix<Scalar> frame = QMatrix<Scalar>::Identity(n);
    while (frame.cols() > 0) {
        const auto restricted = detail::restrict_left_mult(pvm.left, frame);
        const QMatrix<Scalar> z = frame * detail::fixed_vector(restricted);

        CyclicBlock<Scalar> block;
        block.generator = z;
        std::vector<QMatrix<Scalar>> coords;
        for (size_t k = 0; k < pvm.size(); ++k) {
            const QMatrix<Scalar> v = pvm.projectors[k] * z;
            const Scalar mass = inner(z, v).re();
            block.measure.weights.push_back(std::max(mass, Scalar(0)));
            if (mass > Scalar(1e-12)) {
                block.support_indices.push_back(k);
                coords.push_back(QMatrix<Scalar>((frame.adjoint() * v) / std::sqrt(mass)));
            }
        }
        block.isometry = QMatrix<Scalar>(n, static_cast<Eigen::Index>(coords.size()));
        for (Eigen::Index c = 0; c < block.isometry.cols(); ++c)
            set_column(block.isometry, c, QMatrix<Scalar>(frame * coords[static_cast<size_t>(c)]));
        blocks.push_back(std::move(block));

        frame = frame * detail::orthogonal_complement(coords, frame.cols());
    }
    return blocks;
}

/// New associated left multiplication from per-block unimodular slice values:
/// on each cyclic column the generators act by conj(gamma) q gamma. Coincides
/// with the original L on slice values.
template <typename Scalar>
LeftScalarMultiplication<Scalar> twist_left_mult(
    const IqPVM<Scalar>& pvm, const std::vector<CyclicBlock<Scalar>>& model,
    const std::vector<std::vector<std::complex<Scalar>>>& gammas) {
    if (gammas.size() != model.size()) throw DimensionMismatch("one gamma map per block");
    std::vector<QMatrix<Scalar>> twisted;
    for (size_t a = 0; a < model.size(); ++a) {
        if (gammas[a].size() != pvm.size()) throw DimensionMismatch("gamma map over the support");
        const auto& block = model[a];
        for (Eigen::Index c = 0; c < block.isometry.cols(); ++c) {
            const std::complex<Scalar> g = gammas[a][block.support_indices[static_cast<size_t>(c)]];
            if (std::abs(std::abs(g) - Scalar(1)) > Scalar(1e-9)) throw NotUnimodular{};
            twisted.push_back(column(block.isometry, c) *
                              from_slice(std::complex<Scalar>(std::conj(g)), pvm.unit));
        }
    }
    return from_basis(twisted);
}

template <typename Scalar>
LeftScalarMultiplication<Scalar> twist_left_mult(
    const IqPVM<Scalar>& pvm, const std::vector<std::vector<std::complex<Scalar>>>& gammas) {
    return twist_left_mult(pvm, cyclic_l2_model(pvm), gammas);
}

/// Worst violation of the iqPVM axioms plus the reconstruction error against t.
template <typename Scalar>
Scalar pvm_defect(const IqPVM<Scalar>& pvm, const QMatrix<Scalar>& t) {
    const Eigen::Index n = pvm.dimension();
    Scalar defect = 0;
    QMatrix<Scalar> sum(n, n);
    for (size_t k = 0; k < pvm.size(); ++k) {
        const auto& p = pvm.projectors[k];
        defect = std::max(defect, (p * p - p).frobenius_norm());
        defect = std::max(defect, (p - p.adjoint()).frobenius_norm());
        defect = std::max(defect, (p * pvm.left.li() - pvm.left.li() * p).frobenius_norm());
        defect = std::max(defect, (p * pvm.left.lj() - pvm.left.lj() * p).frobenius_norm());
        for (size_t l = k + 1; l < pvm.size(); ++l)
            defect = std::max(defect, (p * pvm.projectors[l]).frobenius_norm());
        sum = sum + p;
    }
    defect = std::max(defect, (sum - QMatrix<Scalar>::Identity(n)).frobenius_norm());
    defect = std::max(defect,
                      (reconstruct(pvm) - t).frobenius_norm() / std::max(Scalar(1), t.frobenius_norm()));
    return defect;
}

}  // namespace qspectra
