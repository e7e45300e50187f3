#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "golden.hpp"
#include "qspectra/left_mult.hpp"
#include "qspectra/random.hpp"

using namespace qspectra;
using golden::approx;

TEST_CASE("from_basis on the standard basis is entrywise multiplication") {
    std::vector<QMat> basis;
    for (int r = 0; r < 3; ++r) {
        QMat e(3, 1);
        e.set(r, 0, Quat::one());
        basis.push_back(e);
    }
    const auto l = from_basis(basis);
    const Quat q{0.3, -1.2, 0.5, 2.0};
    CHECK(approx(l.of(q), QMat(q * QMat::Identity(3)), 1e-14));
}

TEST_CASE("from_basis reproduces the printed L of example (2)") {
    const auto l = from_basis<double>({golden::u1_of_S(), golden::u2_of_S()});
    for (const Quat& q : {Quat::one(), Quat::unit_i(), Quat::unit_j(), Quat::unit_k(),
                          Quat{0.7, -0.2, 1.4, 0.6}})
        CHECK(approx(l.of(q), golden::L_of_S(q), 1e-12));
}

TEST_CASE("from_basis reproduces the printed L of example (1)") {
    const auto l = from_basis<double>({golden::u1_of_T(), golden::u2_of_T()});
    for (const Quat& q : {Quat::one(), Quat::unit_i(), Quat::unit_j(), Quat::unit_k(),
                          Quat{0.7, -0.2, 1.4, 0.6}})
        CHECK(approx(l.of(q), golden::L_of_T(q), 1e-12));
}

TEST_CASE("from_basis rejects non-orthonormal systems") {
    QMat e(2, 1);
    e.set(0, 0, Quat::one());
    CHECK_THROWS_AS(from_basis<double>({e, e}), NotOrthonormal);
    QMat big = e * 1.5;
    QMat f(2, 1);
    f.set(1, 0, Quat::one());
    CHECK_THROWS_AS(from_basis<double>({big, f}), NotOrthonormal);
}

TEST_CASE("generator relations recognize left multiplications") {
    const auto l = from_basis<double>({golden::u1_of_S(), golden::u2_of_S()});
    CHECK(is_left_scalar_multiplication(l.li(), l.lj()));
    const auto std2 = LeftScalarMultiplication<double>::standard(2);
    CHECK(is_left_scalar_multiplication(std2.li(), std2.lj()));
    // L_i = L_j = i fails the anticommutation relation
    const QMat ii = Quat::unit_i() * QMat::Identity(2);
    CHECK_FALSE(is_left_scalar_multiplication(ii, ii));
}

TEST_CASE("basis_from_left_mult satisfies the defining identity") {
    const auto std3 = LeftScalarMultiplication<double>::standard(3);
    const auto basis = basis_from_left_mult(std3);
    REQUIRE(basis.size() == 3);
    Rng rng(31);
    for (const auto& z : basis) {
        // all-real components characterize the standard fixed vectors
        for (Eigen::Index r = 0; r < 3; ++r) CHECK(z(r, 0).im().norm() <= 1e-12);
        const Quat q = rng.quaternion();
        CHECK((std3.of(q) * z - z * q).frobenius_norm() <= 1e-12 * std::max(1.0, q.norm()));
    }

    const auto l = from_basis<double>({golden::u1_of_S(), golden::u2_of_S()});
    for (const auto& z : basis_from_left_mult(l)) {
        CHECK((l.li() * z - z * Quat::unit_i()).frobenius_norm() <= 1e-12);
        CHECK((l.lj() * z - z * Quat::unit_j()).frobenius_norm() <= 1e-12);
    }
}

TEST_CASE("basis_from_left_mult rejects invalid generators") {
    const QMat ii = Quat::unit_i() * QMat::Identity(2);
    CHECK_THROWS_AS(basis_from_left_mult(LeftScalarMultiplication<double>(ii, ii)),
                    NotLeftScalarMultiplication);
}

TEST_CASE("theorem C roundtrip on random left multiplications") {
    Rng rng(32);
    for (int t = 0; t < 50; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const auto l = random_left_mult(rng, n);
        const auto basis = basis_from_left_mult(l);
        REQUIRE(static_cast<Eigen::Index>(basis.size()) == n);
        const auto back = from_basis(basis);
        CHECK((back.li() - l.li()).frobenius_norm() <= 1e-9);
        CHECK((back.lj() - l.lj()).frobenius_norm() <= 1e-9);
    }
}

TEST_CASE("homomorphism and pairing laws on random data") {
    Rng rng(33);
    for (int t = 0; t < 100; ++t) {
        const Eigen::Index n = 2 + Eigen::Index(rng.integer(7));
        const auto l = random_left_mult(rng, n);
        const Quat q = rng.quaternion(), p = rng.quaternion();
        const double scale = std::max(1.0, q.norm() * p.norm());
        CHECK((l.of(q * p) - l.of(q) * l.of(p)).frobenius_norm() <= 1e-10 * scale);
        CHECK((l.of(q + p) - (l.of(q) + l.of(p))).frobenius_norm() <= 1e-10 * scale);
        CHECK((l.of(q).adjoint() - l.of(q.conj())).frobenius_norm() <= 1e-10 * std::max(1.0, q.norm()));
        const double r = rng.normal();
        const QMat u = random_vector(rng, n), v = random_vector(rng, n);
        CHECK((l.of(Quat(r)) * u - u * r).frobenius_norm() <= 1e-10 * std::abs(r) * vector_norm(u));
        CHECK(std::abs(vector_norm(QMat(l.of(q) * u)) - q.norm() * vector_norm(u)) <=
              1e-10 * std::max(1.0, q.norm() * vector_norm(u)));
        const Quat lhs = inner(QMat(l.of(q.conj()) * u), v);
        const Quat rhs = inner(u, QMat(l.of(q) * v));
        CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, q.norm() * vector_norm(u) * vector_norm(v)));
    }
}
