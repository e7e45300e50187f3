#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "golden.hpp"
#include "qspectra/random.hpp"
#include "qspectra/slice_decomp.hpp"

using namespace qspectra;
using golden::approx;

TEST_CASE("decompose reproduces the printed triple for the unitary example") {
    const auto sd = decompose(golden::example_T());
    CHECK(approx(sd.A, golden::A_of_T(), 1e-12));
    CHECK(approx(sd.B, golden::B_of_T(), 1e-12));
    CHECK(approx(sd.J, golden::J_of_T(), 1e-12));
    CHECK(approx(QMat(sd.A + sd.J * sd.B), golden::example_T(), 1e-12));
}

TEST_CASE("decompose on the self-adjoint example uses the kernel rule") {
    const auto sd = decompose(golden::example_S());
    CHECK(approx(sd.A, golden::example_S(), 1e-12));
    CHECK(approx(sd.B, QMat::Zero(2, 2), 1e-10));
    CHECK(approx(sd.J, QMat(Quat::unit_i() * QMat::Identity(2)), 1e-10));
}

TEST_CASE("decompose of a real multiple of the identity") {
    const auto sd = decompose(QMat(QMat::Identity(3) * -2.5));
    CHECK(approx(sd.A, QMat(QMat::Identity(3) * -2.5), 1e-12));
    CHECK(approx(sd.B, QMat::Zero(3, 3), 1e-10));
    CHECK(approx(QMat(sd.J * sd.J), QMat(QMat::Identity(3) * -1.0), 1e-10));
}

TEST_CASE("decompose rejects non-normal input") {
    QMat n(2, 2);
    n.set(0, 1, Quat::one());
    CHECK_THROWS_AS(decompose(n), NotNormal);
}

TEST_CASE("complex subspace basis for the standard J") {
    const QMat j = Quat::unit_i() * QMat::Identity(2);
    const auto basis = complex_subspace_basis(j, Quat::unit_i());
    REQUIRE(basis.dimension() == 2);
    for (Eigen::Index c = 0; c < 2; ++c) {
        const QMat z = basis.vector(c);
        CHECK((j * z - z * Quat::unit_i()).frobenius_norm() <= 1e-10);
        for (Eigen::Index d = 0; d < 2; ++d) {
            const Quat g = inner(basis.vector(d), z);
            CHECK((g - (c == d ? Quat::one() : Quat::zero())).norm() <= 1e-10);
            CHECK(wedge_component(g, Quat::unit_i()).norm() <= 1e-10);
        }
    }
}

TEST_CASE("the printed eigenvectors span H_+ of the unitary example") {
    const QMat j = golden::J_of_T();
    const auto basis = complex_subspace_basis(j, Quat::unit_i());
    for (const QMat& u : {golden::u1_of_T(), golden::u2_of_T()}) {
        CHECK((j * u - u * Quat::unit_i()).frobenius_norm() <= 1e-12);
        // u lies in the C_i span of the computed basis
        QMat residual = u;
        for (Eigen::Index c = 0; c < basis.dimension(); ++c) {
            const QMat z = basis.vector(c);
            residual = residual - z * from_slice(slice_component(inner(z, residual), basis.unit),
                                                 basis.unit);
        }
        CHECK(vector_norm(residual) <= 1e-10);
    }
}

TEST_CASE("any valid J yields an n-dimensional slice basis") {
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(6));
        const auto sd = decompose(random_normal_matrix(rng, n).matrix);
        CHECK(complex_subspace_basis(sd.J, Quat::unit_i()).dimension() == n);
    }
    CHECK_THROWS_AS(complex_subspace_basis(QMat::Identity(2), Quat::unit_i()), NotAntiUnitary);
}

TEST_CASE("restriction to H_+ with the standard basis") {
    const QMat s = golden::example_S();
    std::vector<QMat> std_basis;
    for (int r = 0; r < 2; ++r) {
        QMat e(2, 1);
        e.set(r, 0, Quat::one());
        std_basis.push_back(e);
    }
    const QMat j = Quat::unit_i() * QMat::Identity(2);
    const auto basis = make_subspace_basis<double>(std_basis, j, Quat::unit_i());
    const auto sp = restrict_to_plus(s, basis);
    QMat::ComplexMatrix want(2, 2);
    want << 0, std::complex<double>(0, 1), std::complex<double>(0, -1), 0;
    CHECK((sp - want).norm() <= 1e-14);
    CHECK((restrict_to_plus(QMat::Identity(2), basis) - QMat::ComplexMatrix::Identity(2, 2)).norm() <=
          1e-14);
}

TEST_CASE("the printed eigenbasis diagonalizes the unitary example") {
    const QMat t = golden::example_T();
    const auto basis =
        make_subspace_basis<double>({golden::u1_of_T(), golden::u2_of_T()}, golden::J_of_T(),
                                    Quat::unit_i());
    // oracle: <u_m | T u_n> = delta_mn lambda_m
    CHECK((inner(golden::u1_of_T(), QMat(t * golden::u1_of_T())) - golden::lambda1()).norm() <= 1e-12);
    CHECK((inner(golden::u2_of_T(), QMat(t * golden::u2_of_T())) - golden::lambda2()).norm() <= 1e-12);
    CHECK(inner(golden::u1_of_T(), QMat(t * golden::u2_of_T())).norm() <= 1e-12);
    const auto tp = restrict_to_plus(t, basis);
    QMat::ComplexMatrix want = QMat::ComplexMatrix::Zero(2, 2);
    want(0, 0) = std::complex<double>(1 / golden::RT2, 1 / golden::RT2);
    want(1, 1) = std::complex<double>(-1 / golden::RT2, 1 / golden::RT2);
    CHECK((tp - want).norm() <= 1e-12);
}

TEST_CASE("restriction demands commutation with J") {
    const QMat j = Quat::unit_i() * QMat::Identity(2);
    std::vector<QMat> std_basis;
    for (int r = 0; r < 2; ++r) {
        QMat e(2, 1);
        e.set(r, 0, Quat::one());
        std_basis.push_back(e);
    }
    const auto basis = make_subspace_basis<double>(std_basis, j, Quat::unit_i());
    QMat bad(2, 2);
    bad.set(0, 1, Quat::unit_j());  // j-entry does not commute with J = i
    bad.set(1, 0, Quat::unit_j());
    CHECK_THROWS_AS(restrict_to_plus(bad, basis), DoesNotCommuteWithJ);
}

TEST_CASE("extension reproduces the unitary example from its eigenvalues") {
    const auto basis =
        make_subspace_basis<double>({golden::u1_of_T(), golden::u2_of_T()}, golden::J_of_T(),
                                    Quat::unit_i());
    QMat::ComplexMatrix diag = QMat::ComplexMatrix::Zero(2, 2);
    diag(0, 0) = std::complex<double>(1 / golden::RT2, 1 / golden::RT2);
    diag(1, 1) = std::complex<double>(-1 / golden::RT2, 1 / golden::RT2);
    CHECK(approx(extend_complex_operator<double>(diag, basis, Quat::unit_j()), golden::example_T(),
                 1e-12));
    CHECK(approx(extend_complex_operator<double>(QMat::ComplexMatrix::Identity(2, 2), basis,
                                                 Quat::unit_j()),
                 QMat::Identity(2), 1e-12));
    CHECK_THROWS_AS(extend_complex_operator<double>(diag, basis, Quat::unit_i()), BadAuxiliaryUnit);
    CHECK_THROWS_AS(extend_complex_operator<double>(diag, basis, Quat{0.5, 0.5, 0.5, 0.5}),
                    BadAuxiliaryUnit);
}

TEST_CASE("extension is a star isomorphism onto the J-commutant") {
    Rng rng(42);
    for (int t = 0; t < 40; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(6));
        const auto sd = decompose(random_normal_matrix(rng, n).matrix);
        const auto basis = complex_subspace_basis(sd.J, sd.unit);
        const Quat aux = orthogonal_unit(sd.unit);
        QMat::ComplexMatrix mp(n, n), np(n, n);
        for (Eigen::Index c = 0; c < n; ++c)
            for (Eigen::Index r = 0; r < n; ++r) {
                mp(r, c) = std::complex<double>(rng.normal(), rng.normal());
                np(r, c) = std::complex<double>(rng.normal(), rng.normal());
            }
        const QMat em = extend_complex_operator<double>(mp, basis, aux);
        const QMat en = extend_complex_operator<double>(np, basis, aux);
        CHECK((em * sd.J - sd.J * em).frobenius_norm() <= 1e-10 * std::max(1.0, mp.norm()));
        CHECK(std::abs(operator_norm(em) - mp.jacobiSvd().singularValues()(0)) <=
              1e-10 * std::max(1.0, mp.norm()));
        CHECK((em.adjoint() - extend_complex_operator<double>(mp.adjoint(), basis, aux))
                  .frobenius_norm() <= 1e-10 * std::max(1.0, mp.norm()));
        CHECK((em * en -
               extend_complex_operator<double>(QMat::ComplexMatrix(mp * np), basis, aux))
                  .frobenius_norm() <= 1e-10 * std::max(1.0, mp.norm() * np.norm()));
        // positivity is preserved
        const QMat ep = extend_complex_operator<double>(QMat::ComplexMatrix(mp.adjoint() * mp), basis, aux);
        Eigen::SelfAdjointEigenSolver<QMat::ComplexMatrix> es(chi(ep), Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, mp.norm() * mp.norm()));
        // restrict o extend is the identity
        CHECK((restrict_to_plus(em, basis) - mp).norm() <= 1e-9 * std::max(1.0, mp.norm()));
        // extend o restrict is the identity on J-commuting operators
        CHECK(approx(extend_complex_operator<double>(restrict_to_plus(sd.A, basis), basis, aux), sd.A,
                     1e-9 * std::max(1.0, sd.A.frobenius_norm())));
    }
}

TEST_CASE("reconstruction and uniqueness of the triple") {
    Rng rng(43);
    for (int t = 0; t < 60; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const QMat m = random_normal_matrix(rng, n).matrix;
        const auto sd = decompose(m);
        const double scale = std::max(1.0, operator_norm(m));
        CHECK((m - (sd.A + sd.J * sd.B)).frobenius_norm() <= 1e-9 * scale);
        CHECK((sd.A - sd.A.adjoint()).frobenius_norm() <= 1e-10 * scale);
        CHECK((sd.J.adjoint() + sd.J).frobenius_norm() <= 1e-10);
        CHECK((sd.J.adjoint() * sd.J - QMat::Identity(n)).frobenius_norm() <= 1e-10);
        CHECK((sd.A * sd.B - sd.B * sd.A).frobenius_norm() <= 1e-9 * scale * scale);
        CHECK((sd.A * sd.J - sd.J * sd.A).frobenius_norm() <= 1e-9 * scale);
        CHECK((sd.B * sd.J - sd.J * sd.B).frobenius_norm() <= 1e-9 * scale);
        Eigen::SelfAdjointEigenSolver<QMat::ComplexMatrix> es(chi(sd.B), Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * scale);

        // a second valid J, twisted on Ker(B), agrees on Ran(B)
        const auto eig = hermitian_eigen(sd.B);
        const double cutoff = 1e-8 * scale;
        QMat j_alt(n, n);
        for (Eigen::Index m2 = 0; m2 < n; ++m2) {
            const QMat w = column(eig.vectors, m2);
            if (eig.eigenvalues(m2) > cutoff) {
                j_alt = j_alt + sd.J * outer(w, Quat::one(), w);
            } else {
                const QMat tw = w * rng.unit_quaternion();
                j_alt = j_alt + outer(QMat(tw * Quat::unit_i()), Quat::one(), tw);
            }
        }
        CHECK((m - (sd.A + j_alt * sd.B)).frobenius_norm() <= 1e-9 * scale);
        for (Eigen::Index m2 = 0; m2 < n; ++m2)
            if (eig.eigenvalues(m2) > cutoff)
                CHECK(((sd.J - j_alt) * column(eig.vectors, m2)).frobenius_norm() <= 1e-9);
    }
}
