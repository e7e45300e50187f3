#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qspectra/left_mult.hpp"
#include "qspectra/qmatrix.hpp"

namespace qspectra {

/// Deterministic random source; the distributions are implemented here so
/// seeded streams are reproducible across standard libraries.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        const double u = double(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = 0, v = 0, s = 0;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    std::uint64_t integer(std::uint64_t bound) { return engine_() % bound; }

    Quaternion<double> quaternion() { return {normal(), normal(), normal(), normal()}; }

    Quaternion<double> unit_quaternion() {
        Quaternion<double> q;
        do {
            q = quaternion();
        } while (q.norm() < 1e-6);
        return q / q.norm();
    }

    Quaternion<double> imaginary_unit() {
        Quaternion<double> q = unit_quaternion();
        q.w = 0;
        while (q.norm() < 1e-6) {
            q = unit_quaternion();
            q.w = 0;
        }
        return q / q.norm();
    }

   private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0;
};

inline QMatrix<double> random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    QMatrix<double> m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) m.set(r, c, rng.quaternion());
    return m;
}

inline QMatrix<double> random_vector(Rng& rng, Eigen::Index n) { return random_matrix(rng, n, 1); }

/// Random orthonormal basis of H^n (Gram-Schmidt on Gaussian vectors).
inline std::vector<QMatrix<double>> random_orthonormal_basis(Rng& rng, Eigen::Index n) {
    std::vector<QMatrix<double>> basis;
    while (static_cast<Eigen::Index>(basis.size()) < n) {
        QMatrix<double> v = random_vector(rng, n);
        for (const auto& w : basis) v = v - w * inner(w, v);
        const double norm = vector_norm(v);
        if (norm > 1e-6) basis.push_back(QMatrix<double>(v / norm));
    }
    return basis;
}

inline QMatrix<double> random_unitary(Rng& rng, Eigen::Index n) {
    const auto basis = random_orthonormal_basis(rng, n);
    QMatrix<double> u(n, n);
    for (Eigen::Index c = 0; c < n; ++c) set_column(u, c, basis[static_cast<size_t>(c)]);
    return u;
}

struct RandomNormalOptions {
    double real_span = 2.0;       // eigenvalue real parts drawn from [-span, span]
    double imag_span = 2.0;       // imaginary parts from [0, span]
    double min_gap = 1e-3;        // resample until support points are separated
    double real_point_rate = 0.25;  // chance of forcing a point onto the real axis
    double repeat_rate = 0.2;       // chance of repeating the previous eigenvalue
};

/// Random normal matrix built as U D U^* with a quaternionic unitary U and D
/// diagonal with entries in the closed upper half slice plane. Returns the
/// matrix and its exact support spectrum.
struct RandomNormal {
    QMatrix<double> matrix;
    std::vector<std::complex<double>> spectrum;  // with multiplicity, per basis column
};

inline RandomNormal random_normal_matrix(Rng& rng, Eigen::Index n,
                                         const RandomNormalOptions& opts = {}) {
    std::vector<std::complex<double>> eigs;
    while (true) {
        eigs.clear();
        for (Eigen::Index m = 0; m < n; ++m) {
            if (!eigs.empty() && rng.uniform() < opts.repeat_rate) {
                eigs.push_back(eigs.back());
                continue;
            }
            double re = rng.uniform(-opts.real_span, opts.real_span);
            double im = rng.uniform() < opts.real_point_rate ? 0.0 : rng.uniform(0.0, opts.imag_span);
            eigs.emplace_back(re, im);
        }
        bool ok = true;
        for (size_t a = 0; a < eigs.size() && ok; ++a)
            for (size_t b = a + 1; b < eigs.size() && ok; ++b) {
                const double d = std::abs(eigs[a] - eigs[b]);
                if (d > 0 && d < opts.min_gap) ok = false;
            }
        if (ok) break;
    }
    const QMatrix<double> u = random_unitary(rng, n);
    QMatrix<double> d(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        d.set(m, m, from_slice(eigs[static_cast<size_t>(m)], Quaternion<double>::unit_i()));
    return RandomNormal{u * d * u.adjoint(), std::move(eigs)};
}

inline LeftScalarMultiplication<double> random_left_mult(Rng& rng, Eigen::Index n) {
    return from_basis(random_orthonormal_basis(rng, n));
}

}  // namespace qspectra
