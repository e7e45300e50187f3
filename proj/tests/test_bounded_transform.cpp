#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "golden.hpp"
#include "qspectra/bounded_transform.hpp"
#include "qspectra/random.hpp"

using namespace qspectra;
using golden::approx;

TEST_CASE("transform of simple operators") {
    const auto zero = bounded_transform(QMat::Zero(2, 2));
    CHECK(approx(zero.C, QMat::Identity(2), 1e-14));
    CHECK(approx(zero.Z, QMat::Zero(2, 2), 1e-14));

    const auto one = bounded_transform(QMat::Identity(2));
    CHECK(approx(one.C, QMat(QMat::Identity(2) * 0.5), 1e-13));
    CHECK(approx(one.Z, QMat(QMat::Identity(2) / std::sqrt(2.0)), 1e-13));

    // the unitary example: T*T = 1, so C = 1/2 and Z = T/sqrt(2)
    const QMat t = golden::example_T();
    const auto pt = bounded_transform(t);
    CHECK(approx(pt.C, QMat(QMat::Identity(2) * 0.5), 1e-13));
    CHECK(approx(pt.Z, QMat(t / std::sqrt(2.0)), 1e-13));
    CHECK(operator_norm(pt.Z) == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("inverse transform") {
    CHECK(approx(inverse_transform(QMat::Zero(2, 2)), QMat::Zero(2, 2), 1e-14));
    CHECK(approx(inverse_transform(QMat(QMat::Identity(2) / std::sqrt(2.0))), QMat::Identity(2),
                 1e-13));
    CHECK_THROWS_AS(inverse_transform(QMat::Identity(2)), NotContractive);
}

TEST_CASE("transform invariants on random matrices") {
    Rng rng(71);
    for (int t = 0; t < 60; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const QMat general = random_matrix(rng, n, n);
        const auto pg = bounded_transform(general);
        // C = 1 - Z*Z and its spectrum stays in (0, 1]
        CHECK((pg.C - (QMat::Identity(n) - pg.Z.adjoint() * pg.Z)).frobenius_norm() <= 1e-10);
        Eigen::SelfAdjointEigenSolver<QMat::ComplexMatrix> es(chi(pg.C), Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > 0);
        CHECK(es.eigenvalues().maxCoeff() <= 1 + 1e-12);
        CHECK(operator_norm(pg.Z) < 1);
        // Z_{T^*} = (Z_T)^*, no normality required
        const auto pa = bounded_transform(general.adjoint());
        CHECK((pg.Z.adjoint() - pa.Z).frobenius_norm() <= 1e-10);
    }
}

TEST_CASE("roundtrip recovers normal matrices") {
    Rng rng(72);
    for (int t = 0; t < 60; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const auto rn = random_normal_matrix(rng, n);
        const auto pair = bounded_transform(rn.matrix);
        const double nt = operator_norm(rn.matrix);
        CHECK((inverse_transform(pair.Z) - rn.matrix).frobenius_norm() <= 1e-8 * (1 + nt * nt));
        // normality passes through the transform
        CHECK((pair.Z * pair.Z.adjoint() - pair.Z.adjoint() * pair.Z).frobenius_norm() <=
              1e-10 * std::max(1.0, operator_norm(pair.Z)));
    }
}

TEST_CASE("pushforward path agrees with the direct decomposition") {
    // the unitary example: Z-support at lambda/sqrt(2), mapped back by F
    const QMat t = golden::example_T();
    const auto pvm_z = spectral_decompose(bounded_transform(t).Z);
    for (const auto& p : pvm_z.support)
        CHECK(std::hypot(p.alpha, p.beta) == doctest::Approx(1 / std::sqrt(2.0)));
    const auto pushed = decompose_via_transform(t);
    const auto direct = spectral_decompose(t);
    REQUIRE(pushed.size() == direct.size());
    for (size_t k = 0; k < direct.size(); ++k) {
        CHECK(pushed.support[k].alpha == doctest::Approx(direct.support[k].alpha));
        CHECK(pushed.support[k].beta == doctest::Approx(direct.support[k].beta));
        CHECK(approx(pushed.projectors[k], direct.projectors[k], 1e-10));
    }
    CHECK(approx(reconstruct(pushed), t, 1e-10));

    // zero matrix: both paths give the single point {0}
    const auto z_direct = spectral_decompose(QMat::Zero(2, 2));
    const auto z_pushed = decompose_via_transform(QMat::Zero(2, 2));
    REQUIRE(z_direct.size() == 1);
    REQUIRE(z_pushed.size() == 1);
    CHECK(z_pushed.support[0].alpha == doctest::Approx(0.0));

    Rng rng(73);
    for (int tr = 0; tr < 40; ++tr) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const auto rn = random_normal_matrix(rng, n);
        const auto d = spectral_decompose(rn.matrix);
        const auto p = decompose_via_transform(rn.matrix);
        REQUIRE(d.size() == p.size());
        for (size_t k = 0; k < d.size(); ++k) {
            CHECK(std::hypot(d.support[k].alpha - p.support[k].alpha,
                             d.support[k].beta - p.support[k].beta) <= 1e-8);
            CHECK((d.projectors[k] - p.projectors[k]).frobenius_norm() <= 1e-8);
        }
    }
}

TEST_CASE("positive matrices have nonnegative real support") {
    Rng rng(74);
    for (int t = 0; t < 30; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(6));
        const QMat x = random_matrix(rng, n, n);
        const auto pvm = spectral_decompose(QMat(x.adjoint() * x));
        for (const auto& p : pvm.support) {
            CHECK(p.alpha >= -1e-9 * std::max(1.0, operator_norm(x)));
            CHECK(std::abs(p.beta) <= 1e-9 * std::max(1.0, operator_norm(x)));
        }
    }
}
