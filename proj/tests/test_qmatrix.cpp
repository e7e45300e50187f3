#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "golden.hpp"
#include "qspectra/qmatrix.hpp"
#include "qspectra/random.hpp"

using namespace qspectra;
using golden::approx;

TEST_CASE("adjoint is the conjugate transpose") {
    const QMat t = golden::example_T();
    const QMat want(2, 2, {Quat::zero(), -Quat::unit_j(), -Quat::unit_i(), Quat::zero()});
    CHECK(approx(t.adjoint(), want, 0.0));
    CHECK(approx(t.adjoint().adjoint(), t, 0.0));
}

TEST_CASE("the example operator is unitary") {
    const QMat t = golden::example_T();
    CHECK(approx(t * t.adjoint(), QMat::Identity(2), 1e-15));
    CHECK(approx(t.adjoint() * t, QMat::Identity(2), 1e-15));
    CHECK(approx(t * QMat::Identity(2), t, 0.0));
}

TEST_CASE("chi on scalars") {
    QMat j1(1, 1, {Quat::unit_j()});
    QMat::ComplexMatrix cj(2, 2);
    cj << 0, -1, 1, 0;
    CHECK((chi(j1) - cj).norm() <= 1e-15);

    QMat i1(1, 1, {Quat::unit_i()});
    QMat::ComplexMatrix ci(2, 2);
    ci << std::complex<double>(0, 1), 0, 0, std::complex<double>(0, -1);
    CHECK((chi(i1) - ci).norm() <= 1e-15);
}

TEST_CASE("chi roundtrip and image check") {
    const QMat t = golden::example_T();
    CHECK(approx(chi_inverse<double>(chi(t)), t, 1e-15));
    QMat::ComplexMatrix bad = chi(t);
    bad(0, 0) += 1.0;  // breaks the block symmetry
    CHECK_THROWS_AS(chi_inverse<double>(bad), NotInRepresentationImage);
}

TEST_CASE("determinant of the representation") {
    CHECK(det_c(QMat::Identity(3)) == doctest::Approx(1.0));
    CHECK(det_c(golden::example_T()) == doctest::Approx(1.0));
    // the printed closed form at real argument 7
    CHECK(golden::detC_formula(Quat(7.0)) == doctest::Approx(2402.0));
}

TEST_CASE("inverse") {
    const QMat t = golden::example_T();
    CHECK(approx(inverse(t), t.adjoint(), 1e-12));
    CHECK(approx(inverse(QMat(QMat::Identity(2) * 2.0)), QMat(QMat::Identity(2) * 0.5), 1e-14));
    CHECK_THROWS_AS(inverse(QMat::Zero(2, 2)), Singular);
}

TEST_CASE("operator norm") {
    CHECK(operator_norm(golden::example_T()) == doctest::Approx(1.0));
    CHECK(operator_norm(QMat::Zero(3, 3)) == doctest::Approx(0.0));

    // diag(1+i, 0): oracle is a hand-built 4x4 complex SVD of the representation
    QMat d(2, 2);
    d.set(0, 0, Quat{1, 1, 0, 0});
    QMat::ComplexMatrix rep = QMat::ComplexMatrix::Zero(4, 4);
    rep(0, 0) = std::complex<double>(1, 1);
    rep(2, 2) = std::complex<double>(1, -1);
    const double oracle = rep.jacobiSvd().singularValues()(0);
    CHECK(oracle == doctest::Approx(std::sqrt(2.0)));
    CHECK(operator_norm(d) == doctest::Approx(oracle));
}

TEST_CASE("positive square roots") {
    const QMat id2 = QMat::Identity(2);
    CHECK(approx(sqrt_positive(QMat(id2 * std::sqrt(2.0))), QMat(id2 * std::pow(2.0, 0.25)), 1e-13));
    const QMat p1 = golden::P1_of_T();
    CHECK(approx(sqrt_positive(p1), p1, 1e-10));
    const QMat t = golden::example_T();
    CHECK(approx(sqrt_positive(QMat(t.adjoint() * t)), id2, 1e-12));
    CHECK_THROWS_AS(sqrt_positive(QMat(id2 * -1.0)), NotPositive);
    CHECK_THROWS_AS(sqrt_positive(golden::example_T()), NotPositive);
}

TEST_CASE("absolute values") {
    const QMat t = golden::example_T();
    CHECK(approx(abs_op(QMat(t - t.adjoint())), QMat(QMat::Identity(2) * std::sqrt(2.0)), 1e-12));
    CHECK(approx(abs_op(QMat::Zero(2, 2)), QMat::Zero(2, 2), 1e-15));
    const QMat s = golden::example_S();
    CHECK(approx(abs_op(s), QMat::Identity(2), 1e-12));
}

TEST_CASE("chi is a star homomorphism on random matrices") {
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const QMat m = random_matrix(rng, n, n), k = random_matrix(rng, n, n);
        const double scale = std::max(1.0, m.frobenius_norm() * k.frobenius_norm());
        CHECK((chi(QMat(m * k)) - chi(m) * chi(k)).norm() <= 1e-10 * scale);
        CHECK((chi(m.adjoint()) - chi(m).adjoint()).norm() <= 1e-10 * std::max(1.0, m.frobenius_norm()));
    }
}

TEST_CASE("spectra of representations pair under conjugation") {
    Rng rng(22);
    for (int t = 0; t < 40; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const QMat m = random_matrix(rng, n, n);
        Eigen::ComplexEigenSolver<QMat::ComplexMatrix> es(chi(m), false);
        for (Eigen::Index a = 0; a < es.eigenvalues().size(); ++a) {
            double best = 1e300;
            for (Eigen::Index b = 0; b < es.eigenvalues().size(); ++b)
                best = std::min(best, std::abs(es.eigenvalues()(a) - std::conj(es.eigenvalues()(b))));
            CHECK(best <= 1e-8 * std::max(1.0, m.frobenius_norm()));
        }
    }
}

TEST_CASE("determinant positivity and multiplicativity") {
    Rng rng(23);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(5));
        const QMat m = random_matrix(rng, n, n), k = random_matrix(rng, n, n);
        const double dm = det_c(m), dk = det_c(k), dmk = det_c(QMat(m * k));
        CHECK(dm >= -1e-8 * std::max(1.0, std::abs(dm)));
        CHECK(std::abs(dmk - dm * dk) <= 1e-8 * std::max({1.0, std::abs(dmk), std::abs(dm * dk)}));
    }
}

TEST_CASE("square roots square back and norms multiply") {
    Rng rng(24);
    for (int t = 0; t < 60; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const QMat x = random_matrix(rng, n, n);
        const QMat m = x.adjoint() * x;
        const QMat r = sqrt_positive(m);
        CHECK((r * r - m).frobenius_norm() <= 1e-9 * std::max(1.0, operator_norm(m)));
        const double nx = operator_norm(x);
        CHECK(std::abs(operator_norm(m) - nx * nx) <= 1e-9 * std::max(1.0, nx * nx));
    }
}

TEST_CASE("hermitian eigenbasis diagonalizes") {
    Rng rng(25);
    for (int t = 0; t < 40; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(6));
        const QMat x = random_matrix(rng, n, n);
        const QMat m = QMat((x + x.adjoint()) * 0.5);
        const auto eig = hermitian_eigen(m);
        for (Eigen::Index c = 0; c < n; ++c) {
            const QMat w = column(eig.vectors, c);
            CHECK((m * w - w * eig.eigenvalues(c)).frobenius_norm() <=
                  1e-9 * std::max(1.0, m.frobenius_norm()));
            for (Eigen::Index d = 0; d < n; ++d) {
                const Quat g = inner(column(eig.vectors, d), w);
                CHECK((g - (c == d ? Quat::one() : Quat::zero())).norm() <= 1e-10);
            }
        }
    }
}

TEST_CASE("shape errors") {
    CHECK_THROWS_AS(QMat(2, 2) * QMat(3, 3), DimensionMismatch);
    CHECK_THROWS_AS(QMat(2, 2) + QMat(3, 3), DimensionMismatch);
    CHECK_THROWS_AS(det_c(QMat(2, 3)), DimensionMismatch);
}
