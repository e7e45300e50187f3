#pragma once

// Frozen data for the two 2x2 worked examples: the unitary T = [[0,i],[j,0]]
// and the self-adjoint S = [[0,i],[-i,0]], together with their printed
// decompositions, projectors, eigenvectors and left multiplications.

#include <cmath>

#include "qspectra/qmatrix.hpp"

namespace golden {

using qspectra::QMat;
using qspectra::Quat;

inline const double RT2 = std::sqrt(2.0);

inline Quat qi() { return Quat::unit_i(); }
inline Quat qj() { return Quat::unit_j(); }
inline Quat qk() { return Quat::unit_k(); }

inline QMat example_T() { return QMat(2, 2, {Quat::zero(), qi(), qj(), Quat::zero()}); }
inline QMat example_S() { return QMat(2, 2, {Quat::zero(), qi(), -qi(), Quat::zero()}); }

inline Quat lambda1() { return {1 / RT2, 1 / RT2, 0, 0}; }
inline Quat lambda2() { return {-1 / RT2, 1 / RT2, 0, 0}; }

inline QMat A_of_T() {
    const Quat d = (qi() - qj()) / 2.0;
    return QMat(2, 2, {Quat::zero(), d, -d, Quat::zero()});
}
inline QMat B_of_T() { return QMat::Identity(2) * (RT2 / 2.0); }
inline QMat J_of_T() {
    const Quat d = (qi() + qj()) / RT2;
    return QMat(2, 2, {Quat::zero(), d, d, Quat::zero()});
}

inline QMat P1_of_T() {
    const Quat d = (qi() - qj()) / RT2;
    return QMat(2, 2, {Quat::one(), d, -d, Quat::one()}) * 0.5;
}
inline QMat P2_of_T() {
    const Quat d = (qj() - qi()) / RT2;
    return QMat(2, 2, {Quat::one(), d, -d, Quat::one()}) * 0.5;
}

/// The left scalar multiplication printed for example (1).
inline QMat L_of_T(const Quat& q) {
    const Quat e11 = Quat(q.w) - qj() * q.y;
    const Quat e12 = Quat{-q.z, q.x, q.x, -q.z} / RT2;
    const Quat e21 = Quat{q.z, q.x, q.x, -q.z} / RT2;
    const Quat e22 = Quat(q.w) + qi() * q.y;
    return QMat(2, 2, {e11, e12, e21, e22});
}

/// Eigenvector Hilbert basis of example (1).
inline QMat u1_of_T() {
    return QMat(2, 1, {(qi() + qk()) / 2.0, Quat{1, 1, 1, -1} / (2 * RT2)});
}
inline QMat u2_of_T() {
    return QMat(2, 1, {(qi() - qk()) / 2.0, Quat{-1, 1, 1, 1} / (2 * RT2)});
}
/// Second real generator of the lambda_1 right eigenspace, u1' = u1 * (-i).
inline QMat u1_prime_of_T() {
    return QMat(2, 1, {(Quat::one() - qj()) / 2.0, Quat{1, -1, 1, 1} / (2 * RT2)});
}

inline QMat P1_of_S() { return QMat(2, 2, {Quat::one(), qi(), -qi(), Quat::one()}) * 0.5; }
inline QMat P2_of_S() { return QMat(2, 2, {Quat::one(), -qi(), qi(), Quat::one()}) * 0.5; }

inline QMat u1_of_S() { return QMat(2, 1, {Quat(1 / RT2), -qi() / RT2}); }
inline QMat u2_of_S() { return QMat(2, 1, {Quat(1 / RT2), qi() / RT2}); }

/// The left scalar multiplication printed for example (2): diag(q, -i q i).
inline QMat L_of_S(const Quat& q) {
    return QMat(2, 2, {q, Quat::zero(), Quat::zero(), -(qi() * q * qi())});
}

/// Delta_{lambda_1}(T) = T^2 - sqrt(2) T + 1 as printed in the worked example.
inline QMat delta_lambda1_of_T() {
    return QMat(2, 2, {Quat::one() + qk(), qi() * (-RT2), qj() * (-RT2), Quat::one() - qk()});
}

/// The printed closed form of det_C(T - L_q).
inline double detC_formula(const Quat& q) {
    const double a = (q.w * q.w - 0.5) + (q.x - 1 / RT2) * (q.x - 1 / RT2);
    const double b = RT2 * q.x - 1;
    const double wedge = q.y * q.y + q.z * q.z;
    return a * a + b * b + (1 + 2 * q.w * q.w + b * b + wedge) * wedge;
}

inline bool approx(const Quat& a, const Quat& b, double tolerance = 1e-10) {
    return (a - b).norm() <= tolerance;
}

inline bool approx(const QMat& a, const QMat& b, double tolerance = 1e-10) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).frobenius_norm() <= tolerance;
}

}  // namespace golden
