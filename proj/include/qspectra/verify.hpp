#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qspectra/bounded_transform.hpp"
#include "qspectra/left_spectrum.hpp"
#include "qspectra/random.hpp"
#include "qspectra/spectral.hpp"

namespace qspectra {

/// Outcome of one invariant family over seeded random trials.
struct CheckResult {
    std::string name;
    int trials = 0;
    double max_residual = 0;
    double tolerance = 0;
    bool pass = true;
    std::string note;

    void absorb(double residual) { max_residual = std::max(max_residual, residual); }
    void finish() { pass = pass && max_residual <= tolerance; }
};

namespace checks {

inline Eigen::Index trial_dim(Rng& rng, Eigen::Index max_n) {
    return 2 + static_cast<Eigen::Index>(rng.integer(static_cast<std::uint64_t>(std::max<Eigen::Index>(max_n - 1, 1))));
}

inline CheckResult quaternion_algebra(Rng& rng, int trials) {
    CheckResult res{"quaternion_algebra", trials, 0, 1e-12};
    for (int t = 0; t < trials; ++t) {
        const Quat a = rng.quaternion(), b = rng.quaternion(), c = rng.quaternion();
        const double scale = std::max(1.0, a.norm() * b.norm() * c.norm());
        res.absorb(((a * b) * c - a * (b * c)).norm() / scale);
        res.absorb((a * (b + c) - (a * b + a * c)).norm() / scale);
        res.absorb(((a * b).conj() - b.conj() * a.conj()).norm() / scale);
        res.absorb(std::abs((a * b).norm() - a.norm() * b.norm()) / scale);
        res.absorb((a.conj().conj() - a).norm());
    }
    res.finish();
    return res;
}

inline CheckResult slice_form_reconstruction(Rng& rng, int trials) {
    CheckResult res{"slice_form_reconstruction", trials, 0, 1e-14};
    for (int t = 0; t < trials; ++t) {
        const Quat q = rng.quaternion();
        if (q.im().norm() == 0) continue;
        const auto p = slice_form(q, Quat::unit_i());
        res.absorb((p.value() - q).norm() / std::max(1.0, q.norm()));
    }
    res.finish();
    return res;
}

inline CheckResult sphere_conjugation(Rng& rng, int trials) {
    CheckResult res{"sphere_conjugation_invariance", trials, 0, 1e-12};
    for (int t = 0; t < trials; ++t) {
        const Quat q = rng.quaternion();
        Quat s = rng.quaternion();
        if (s.norm() < 1e-3) s = s + Quat(1.0);
        const Quat conjugated = s * q * s.inverse();
        res.absorb(std::abs(conjugated.re() - q.re()) + std::abs(conjugated.norm() - q.norm()));
        if (!sphere_equivalent(q, conjugated, 1e-12 * std::max(1.0, q.norm()))) res.pass = false;
    }
    res.finish();
    return res;
}

inline CheckResult chi_homomorphism(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"chi_homomorphism", trials, 0, 1e-10};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const QMat m = random_matrix(rng, n, n), k = random_matrix(rng, n, n);
        const double scale = std::max(1.0, m.frobenius_norm() * k.frobenius_norm());
        res.absorb((chi(QMat(m * k)) - chi(m) * chi(k)).norm() / scale);
        res.absorb((chi(m.adjoint()) - chi(m).adjoint()).norm() / std::max(1.0, m.frobenius_norm()));
    }
    res.finish();
    return res;
}

inline CheckResult chi_eigenvalue_pairing(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"chi_eigenvalue_pairing", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const QMat m = random_matrix(rng, n, n);
        Eigen::ComplexEigenSolver<QMat::ComplexMatrix> es(chi(m), false);
        const auto& ev = es.eigenvalues();
        for (Eigen::Index a = 0; a < ev.size(); ++a) {
            double best = 1e300;
            for (Eigen::Index b = 0; b < ev.size(); ++b)
                best = std::min(best, std::abs(ev(a) - std::conj(ev(b))));
            res.absorb(best / std::max(1.0, m.frobenius_norm()));
        }
    }
    res.finish();
    return res;
}

inline CheckResult study_determinant(Rng& rng, int trials, Eigen::Index max_n = 6) {
    CheckResult res{"study_determinant", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const QMat m = random_matrix(rng, n, n), k = random_matrix(rng, n, n);
        const double dm = det_c(m), dk = det_c(k), dmk = det_c(QMat(m * k));
        const double scale = std::max({1.0, std::abs(dm * dk), std::abs(dmk)});
        res.absorb(std::max(0.0, -dm) / std::max(1.0, std::abs(dm)));
        res.absorb(std::abs(dmk - dm * dk) / scale);
    }
    res.finish();
    return res;
}

inline CheckResult sqrt_and_norm(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"sqrt_and_operator_norm", trials, 0, 1e-9};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const QMat x = random_matrix(rng, n, n);
        const QMat m = x.adjoint() * x;
        const QMat r = sqrt_positive(m);
        res.absorb((r * r - m).frobenius_norm() / std::max(1.0, operator_norm(m)));
        const double nm = operator_norm(x);
        res.absorb(std::abs(operator_norm(m) - nm * nm) / std::max(1.0, nm * nm));
    }
    res.finish();
    return res;
}

inline CheckResult left_mult_laws(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"left_mult_laws", trials, 0, 1e-10};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto l = random_left_mult(rng, n);
        const Quat q = rng.quaternion(), p = rng.quaternion();
        const double scale = std::max(1.0, q.norm() * p.norm());
        res.absorb((l.of(q * p) - l.of(q) * l.of(p)).frobenius_norm() / scale);
        res.absorb((l.of(q + p) - (l.of(q) + l.of(p))).frobenius_norm() / scale);
        res.absorb((l.of(q).adjoint() - l.of(q.conj())).frobenius_norm() / std::max(1.0, q.norm()));
        const QMat u = random_vector(rng, n), v = random_vector(rng, n);
        res.absorb(std::abs(vector_norm(QMat(l.of(q) * u)) - q.norm() * vector_norm(u)) /
                   std::max(1.0, q.norm() * vector_norm(u)));
        const Quat lhs = inner(QMat(l.of(q.conj()) * u), v);
        const Quat rhs = inner(u, QMat(l.of(q) * v));
        res.absorb((lhs - rhs).norm() / std::max(1.0, q.norm() * vector_norm(u) * vector_norm(v)));
    }
    res.finish();
    return res;
}

inline CheckResult theorem_c_roundtrip(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"theorem_c_roundtrip", trials, 0, 1e-9};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto l = random_left_mult(rng, n);
        const auto basis = basis_from_left_mult(l);
        for (const auto& z : basis) {
            res.absorb((l.li() * z - z * Quat::unit_i()).frobenius_norm());
            res.absorb((l.lj() * z - z * Quat::unit_j()).frobenius_norm());
        }
        const auto back = from_basis(basis);
        res.absorb((back.li() - l.li()).frobenius_norm());
        res.absorb((back.lj() - l.lj()).frobenius_norm());
    }
    res.finish();
    return res;
}

inline CheckResult theorem_c_rejection(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"theorem_c_rejection", trials, 0, 0};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto l = random_left_mult(rng, n);
        QMat li = l.li(), lj = l.lj();
        switch (rng.integer(4)) {
            case 0:  // breaks the anticommutation relation
                lj = li;
                break;
            case 1:  // breaks L_j^2 = -1
                lj = lj * 1.05;
                break;
            case 2:  // breaks the adjoint condition
                li = li + QMat::Identity(n) * 0.05;
                break;
            default:  // generic additive damage
                lj = lj + random_matrix(rng, n, n) * 0.05;
                break;
        }
        if (is_left_scalar_multiplication(li, lj)) {
            res.pass = false;
            res.note = "perturbed generators were accepted";
        }
    }
    res.finish();
    return res;
}

inline CheckResult slice_decomposition(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"slice_decomposition", trials, 0, 1e-9};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto sd = decompose(rn.matrix);
        const double scale = std::max(1.0, operator_norm(rn.matrix));
        res.absorb((sd.A + sd.J * sd.B - rn.matrix).frobenius_norm() / scale);
        res.absorb((sd.A - sd.A.adjoint()).frobenius_norm() / scale);
        res.absorb((sd.J.adjoint() + sd.J).frobenius_norm());
        res.absorb((sd.J.adjoint() * sd.J - QMat::Identity(n)).frobenius_norm());
        res.absorb((sd.A * sd.B - sd.B * sd.A).frobenius_norm() / (scale * scale));
        res.absorb((sd.A * sd.J - sd.J * sd.A).frobenius_norm() / scale);
        res.absorb((sd.B * sd.J - sd.J * sd.B).frobenius_norm() / scale);
        // J is unique on the closure of Ran(B): twist the kernel rule and compare there.
        const auto eig = hermitian_eigen(sd.B);
        const double cutoff = 1e-8 * std::max(1.0, eig.eigenvalues.maxCoeff());
        QMat j_alt(n, n);
        bool has_kernel = false;
        for (Eigen::Index m = 0; m < n; ++m) {
            const QMat w = column(eig.vectors, m);
            if (eig.eigenvalues(m) > cutoff) {
                j_alt = j_alt + sd.J * outer(w, Quat::one(), w);
            } else {
                has_kernel = true;
                const QMat tw = w * rng.unit_quaternion();
                j_alt = j_alt + outer(QMat(tw * Quat::unit_i()), Quat::one(), tw);
            }
        }
        if (has_kernel) {
            res.absorb((sd.A + j_alt * sd.B - rn.matrix).frobenius_norm() / scale);
            for (Eigen::Index m = 0; m < n; ++m) {
                if (eig.eigenvalues(m) <= cutoff) continue;
                const QMat w = column(eig.vectors, m);
                res.absorb(((sd.J - j_alt) * w).frobenius_norm());
            }
        }
    }
    res.finish();
    return res;
}

inline CheckResult complex_extension(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"complex_extension", trials, 0, 1e-10};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto sd = decompose(rn.matrix);
        const auto basis = complex_subspace_basis(sd.J, sd.unit);
        QMat::ComplexMatrix mp(n, n), np(n, n);
        for (Eigen::Index c = 0; c < n; ++c)
            for (Eigen::Index r = 0; r < n; ++r) {
                mp(r, c) = std::complex<double>(rng.normal(), rng.normal());
                np(r, c) = std::complex<double>(rng.normal(), rng.normal());
            }
        const Quat aux = orthogonal_unit(sd.unit);
        const QMat em = extend_complex_operator<double>(mp, basis, aux);
        const QMat en = extend_complex_operator<double>(np, basis, aux);
        const double scale = std::max(1.0, mp.norm() * np.norm());
        res.absorb(std::abs(operator_norm(em) - mp.jacobiSvd().singularValues()(0)) /
                   std::max(1.0, mp.norm()));
        res.absorb((em.adjoint() - extend_complex_operator<double>(mp.adjoint(), basis, aux))
                       .frobenius_norm() / std::max(1.0, mp.norm()));
        res.absorb((em * en - extend_complex_operator<double>(QMat::ComplexMatrix(mp * np), basis, aux))
                       .frobenius_norm() / scale);
        const QMat::ComplexMatrix pos = mp.adjoint() * mp;
        const QMat ep = extend_complex_operator<double>(pos, basis, aux);
        Eigen::SelfAdjointEigenSolver<QMat::ComplexMatrix> es(chi(ep), Eigen::EigenvaluesOnly);
        res.absorb(std::max(0.0, -es.eigenvalues().minCoeff()) / std::max(1.0, pos.norm()));
        res.absorb((from_slice_matrix<double>(restrict_to_plus(em, basis), sd.unit) -
                    from_slice_matrix<double>(mp, sd.unit)).frobenius_norm() / std::max(1.0, mp.norm()));
        res.absorb((extend_complex_operator<double>(restrict_to_plus(QMat(sd.A), basis), basis, aux) - sd.A)
                       .frobenius_norm() / std::max(1.0, sd.A.frobenius_norm()));
    }
    res.finish();
    return res;
}

inline CheckResult spectral_reconstruction(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"spectral_reconstruction", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        res.absorb((reconstruct(pvm) - rn.matrix).frobenius_norm() /
                   std::max(operator_norm(rn.matrix), 1e-12));
        res.absorb(pvm_defect(pvm, rn.matrix) / std::max(1.0, operator_norm(rn.matrix)));
    }
    res.finish();
    return res;
}

inline CheckResult pvm_uniqueness_via_transform(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"pvm_uniqueness_via_transform", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto direct = spectral_decompose(rn.matrix);
        const auto pushed = decompose_via_transform(rn.matrix);
        if (direct.size() != pushed.size()) {
            res.pass = false;
            res.note = "support sizes disagree";
            continue;
        }
        for (size_t k = 0; k < direct.size(); ++k) {
            res.absorb(std::hypot(direct.support[k].alpha - pushed.support[k].alpha,
                                  direct.support[k].beta - pushed.support[k].beta));
            res.absorb((direct.projectors[k] - pushed.projectors[k]).frobenius_norm());
        }
    }
    res.finish();
    return res;
}

inline CheckResult teo1_laws(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"teo1_laws", trials, 0, 1e-9};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        std::vector<Quat> phi, psi, sum, prod, conj_phi, abs_phi;
        bool phi_has_zero = false;
        for (size_t k = 0; k < pvm.size(); ++k) {
            Quat f = rng.quaternion();
            if (rng.uniform() < 0.3) {
                f = Quat::zero();
                phi_has_zero = true;
            }
            const Quat g = rng.quaternion();
            phi.push_back(f);
            psi.push_back(g);
            sum.push_back(f + g);
            prod.push_back(f * g);
            conj_phi.push_back(f.conj());
            abs_phi.push_back(Quat(f.norm()));
        }
        const QMat iphi = integrate(phi, pvm), ipsi = integrate(psi, pvm);
        double scale = 1.0;
        for (const auto& f : phi) scale = std::max(scale, f.norm());
        for (const auto& g : psi) scale = std::max(scale, g.norm());
        res.absorb((integrate(sum, pvm) - (iphi + ipsi)).frobenius_norm() / scale);
        res.absorb((integrate(prod, pvm) - iphi * ipsi).frobenius_norm() / (scale * scale));
        res.absorb((integrate(conj_phi, pvm) - iphi.adjoint()).frobenius_norm() / scale);
        res.absorb((abs_op(iphi) - integrate(abs_phi, pvm)).frobenius_norm() / scale);
        double esssup = 0;
        for (const auto& f : phi) esssup = std::max(esssup, f.norm());
        res.absorb(std::abs(operator_norm(iphi) - esssup) / std::max(1.0, esssup));
        // Ker(integral) is the range of the projector sum over the zero set.
        QMat zero_proj(n, n);
        for (size_t k = 0; k < pvm.size(); ++k)
            if (phi[k].norm() == 0.0) zero_proj = zero_proj + pvm.projectors[k];
        const auto kernel = kernel_basis(iphi, 1e-8);
        const double expected_rank = phi_has_zero ? std::round((zero_proj.slice_a().trace()).real()) : 0.0;
        if (static_cast<double>(kernel.size()) != expected_rank) {
            res.pass = false;
            res.note = "kernel dimension disagrees with the zero-set projector rank";
        }
        for (const auto& u : kernel) res.absorb((zero_proj * u - u).frobenius_norm());
        // The constant q integrates to L_q.
        const Quat q = rng.quaternion();
        res.absorb((integrate(std::vector<Quat>(pvm.size(), q), pvm) - pvm.left.of(q)).frobenius_norm() /
                   std::max(1.0, q.norm()));
    }
    res.finish();
    return res;
}

inline CheckResult spectral_measures(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"spectral_measures", trials, 0, 1e-10};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        const QMat u = random_vector(rng, n), v = random_vector(rng, n);
        const auto mu = scalar_measure(u, pvm);
        const auto nu = quaternion_measure(u, v, pvm);
        const auto nuu = quaternion_measure(u, u, pvm);
        const double un = vector_norm(u), vn = vector_norm(v);
        res.absorb(std::abs(mu.total_mass() - un * un) / std::max(1.0, un * un));
        for (size_t k = 0; k < pvm.size(); ++k)
            res.absorb((nuu.values[k] - Quat(mu.weights[k])).norm() / std::max(1.0, un * un));
        // norm identity and the real-integrand pairing
        std::vector<Quat> phi;
        std::vector<Quat> real_phi;
        for (size_t k = 0; k < pvm.size(); ++k) {
            phi.push_back(rng.quaternion());
            real_phi.push_back(Quat(rng.normal()));
        }
        const QMat iu = integrate(phi, pvm) * u;
        double want = 0;
        for (size_t k = 0; k < pvm.size(); ++k) want += phi[k].squared_norm() * mu.weights[k];
        res.absorb(std::abs(vector_norm(iu) * vector_norm(iu) - want) / std::max(1.0, want));
        Quat pairing = Quat::zero();
        for (size_t k = 0; k < pvm.size(); ++k) pairing = pairing + nu.values[k] * real_phi[k].re();
        res.absorb((inner(u, QMat(integrate(real_phi, pvm) * v)) - pairing).norm() /
                   std::max(1.0, un * vn));
        // quaternionic polarization of nu out of eight scalar measures
        const Quat jm = Quat::unit_j(), km = Quat::unit_k(), im = Quat::unit_i();
        for (size_t k = 0; k < pvm.size(); ++k) {
            auto mass = [&](const QMat& w) { return scalar_measure(w, pvm).weights[k]; };
            const Quat pol =
                (Quat(mass(QMat(u + v)) - mass(QMat(u - v))) +
                 Quat(mass(QMat(u * im + v)) - mass(QMat(u * im - v))) * im +
                 Quat(mass(QMat(u * jm + v)) - mass(QMat(u * jm - v))) * jm +
                 Quat(mass(QMat(u * km + v)) - mass(QMat(u * km - v))) * km) / 4.0;
            res.absorb((pol - nu.values[k]).norm() / std::max(1.0, un * vn));
        }
    }
    res.finish();
    return res;
}

inline CheckResult real_axis_and_delta(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"real_axis_and_delta_kernel", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        QMat real_proj(n, n);
        for (size_t k = 0; k < pvm.size(); ++k)
            if (pvm.support[k].beta <= 1e-10) real_proj = real_proj + pvm.projectors[k];
        const auto kernel = kernel_basis(QMat(rn.matrix - rn.matrix.adjoint()), 1e-8);
        const double rank = std::round(real_proj.slice_a().trace().real());
        if (static_cast<double>(kernel.size()) != rank) {
            res.pass = false;
            res.note = "P(R) rank disagrees with dim Ker(T - T*)";
        }
        for (const auto& u : kernel) res.absorb((real_proj * u - u).frobenius_norm());
        for (size_t k = 0; k < pvm.size(); ++k) {
            const auto dk = kernel_basis(delta(rn.matrix, pvm.support[k].value()), 1e-8);
            const double prank = std::round(pvm.projectors[k].slice_a().trace().real());
            if (4.0 * prank != 4.0 * static_cast<double>(dk.size())) {
                res.pass = false;
                res.note = "Delta kernel dimension disagrees with projector rank";
            }
        }
    }
    res.finish();
    return res;
}

inline CheckResult theorem_e(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"theorem_e_left_spectrum", trials, 0, 1e-7};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        // Independent route to sigma_S \cap C^+: eigenvalues of chi(T).
        Eigen::ComplexEigenSolver<QMat::ComplexMatrix> es(chi(rn.matrix), false);
        std::vector<std::complex<double>> sigma_s;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            std::complex<double> z = es.eigenvalues()(k);
            if (z.imag() < 0) z = std::conj(z);
            sigma_s.push_back(z);
        }
        double hausdorff = 0;
        for (const auto& p : pvm.support) {
            const std::complex<double> z(p.alpha, p.beta);
            double best = 1e300;
            for (const auto& s : sigma_s) best = std::min(best, std::abs(z - s));
            hausdorff = std::max(hausdorff, best);
        }
        for (const auto& s : sigma_s) {
            double best = 1e300;
            for (const auto& p : pvm.support)
                best = std::min(best, std::abs(std::complex<double>(p.alpha, p.beta) - s));
            hausdorff = std::max(hausdorff, best);
        }
        res.absorb(hausdorff);
        for (const auto& p : pvm.support)
            if (left_membership(rn.matrix, pvm.left, p.value()) != LeftMembership::point) {
                res.pass = false;
                res.note = "support point not detected as left eigenvalue";
            }
    }
    res.finish();
    return res;
}

inline CheckResult resolvent_identity(Rng& rng, int trials, Eigen::Index max_n = 8,
                                      int samples_per_matrix = 5) {
    CheckResult res{"resolvent_identity", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        for (int s = 0; s < samples_per_matrix; ++s) {
            Quat q = rng.quaternion() * (operator_norm(rn.matrix) + 1.0);
            double closest = 1e300;
            for (const auto& p : pvm.support) {
                closest = std::min(closest, (q - p.value()).norm());
                closest = std::min(closest, (q.conj() - p.value()).norm());
            }
            if (closest < 0.3) continue;  // stay in the resolvent set
            const QMat direct = left_resolvent(rn.matrix, pvm.left, q);
            const QMat via = resolvent_via_calculus(pvm, q);
            res.absorb((direct - via).frobenius_norm() / std::max(1e-12, direct.frobenius_norm()));
        }
    }
    res.finish();
    return res;
}

inline CheckResult eigenvector_promotion(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"right_eigenvector_promotion", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        const size_t pick = rng.integer(pvm.size());
        const Quat q = pvm.support[pick].value();
        const auto right = real_kernel_basis<double>(
            real_linear_matrix<double>(n, [&](const QMat& u) { return rn.matrix * u - u * q; }), 1e-8);
        if (right.empty()) {
            res.pass = false;
            res.note = "missing right eigenvector";
            continue;
        }
        const QMat lq = pvm.left.of(q);
        for (const auto& u : right)
            res.absorb((rn.matrix * u - lq * u).frobenius_norm() / std::max(1e-12, vector_norm(u)));
        // sigma_L membership vanishes off C_+: T - L_p stays invertible for wedge p.
        const Quat off = q + Quat(0, 0, 0.7, -0.3);
        if (off.y != 0 || off.z != 0)
            if (left_membership(rn.matrix, pvm.left, off) != LeftMembership::resolvent) {
                res.pass = false;
                res.note = "wedge point reported as left eigenvalue";
            }
    }
    res.finish();
    return res;
}

inline CheckResult star_conjugating_unitary(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"star_conjugating_unitary", trials, 0, 1e-9};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        const Quat jm = orthogonal_unit(pvm.unit);
        const QMat u = pvm.left.of(-jm);
        res.absorb((u.adjoint() * u - QMat::Identity(n)).frobenius_norm());
        res.absorb((u.adjoint() * rn.matrix * u - rn.matrix.adjoint()).frobenius_norm() /
                   std::max(1e-12, operator_norm(rn.matrix)));
    }
    res.finish();
    return res;
}

inline CheckResult theorem_b_model(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"theorem_b_cyclic_model", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        const auto model = cyclic_l2_model(pvm);
        std::vector<Quat> phi;
        for (size_t k = 0; k < pvm.size(); ++k) phi.push_back(rng.quaternion());
        const QMat op = integrate(phi, pvm);
        const Quat q = rng.quaternion();
        const QMat lq = pvm.left.of(q);
        Eigen::Index total = 0;
        for (const auto& blk : model) {
            const QMat conj_op = blk.isometry.adjoint() * op * blk.isometry;
            const QMat conj_lq = blk.isometry.adjoint() * lq * blk.isometry;
            for (Eigen::Index c = 0; c < conj_op.cols(); ++c)
                for (Eigen::Index r = 0; r < conj_op.rows(); ++r) {
                    const Quat want_op =
                        r == c ? phi[blk.support_indices[static_cast<size_t>(c)]] : Quat::zero();
                    res.absorb((conj_op(r, c) - want_op).norm() / std::max(1.0, want_op.norm()));
                    res.absorb((conj_lq(r, c) - (r == c ? q : Quat::zero())).norm() /
                               std::max(1.0, q.norm()));
                }
            total += blk.isometry.cols();
            res.absorb(std::abs(blk.measure.total_mass() - 1.0));
        }
        if (total != n) {
            res.pass = false;
            res.note = "cyclic blocks do not exhaust the space";
        }
    }
    res.finish();
    return res;
}

inline CheckResult twist_left_multiplications(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"twist_left_multiplications", trials, 0, 1e-9};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        const auto rn = random_normal_matrix(rng, n);
        const auto pvm = spectral_decompose(rn.matrix);
        const auto model = cyclic_l2_model(pvm);
        std::vector<std::vector<std::complex<double>>> gammas(model.size());
        for (auto& g : gammas)
            for (size_t k = 0; k < pvm.size(); ++k) {
                const double th = rng.uniform(0, 2 * EIGEN_PI);
                g.emplace_back(std::cos(th), std::sin(th));
            }
        const auto twisted = twist_left_mult(pvm, model, gammas);
        const auto residuals = prop_l_residuals(rn.matrix, twisted, pvm.unit);
        res.absorb(residuals.max());
        const Quat c = from_slice(std::complex<double>(rng.normal(), rng.normal()), pvm.unit);
        res.absorb((twisted.of(c) - pvm.left.of(c)).frobenius_norm() / std::max(1.0, c.norm()));
        // L' still reconstructs T together with the unique P.
        IqPVM<double> twisted_pvm = pvm;
        twisted_pvm.left = twisted;
        res.absorb((reconstruct(twisted_pvm) - rn.matrix).frobenius_norm() /
                   std::max(1e-12, operator_norm(rn.matrix)));
    }
    res.finish();
    return res;
}

inline CheckResult bounded_transform_laws(Rng& rng, int trials, Eigen::Index max_n = 8) {
    CheckResult res{"bounded_transform_laws", trials, 0, 1e-8};
    for (int t = 0; t < trials; ++t) {
        const Eigen::Index n = trial_dim(rng, max_n);
        // Z_T^* = Z_{T^*} needs no normality.
        const QMat general = random_matrix(rng, n, n);
        const auto pg = bounded_transform(general);
        const auto pa = bounded_transform(general.adjoint());
        if ((pg.Z.adjoint() - pa.Z).frobenius_norm() > 1e-10) {
            res.pass = false;
            res.note = "Z_T adjoint law violated beyond 1e-10";
        }
        Eigen::SelfAdjointEigenSolver<QMat::ComplexMatrix> es(chi(pg.C), Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() <= 0 || es.eigenvalues().maxCoeff() > 1 + 1e-12) {
            res.pass = false;
            res.note = "spectrum of C leaves (0, 1]";
        }
        if (operator_norm(pg.Z) >= 1) {
            res.pass = false;
            res.note = "transform is not a strict contraction";
        }
        res.absorb((pg.C - (QMat::Identity(n) - pg.Z.adjoint() * pg.Z)).frobenius_norm());
        // Roundtrip on a normal matrix.
        const auto rn = random_normal_matrix(rng, n);
        const auto pair = bounded_transform(rn.matrix);
        const double nt = operator_norm(rn.matrix);
        res.absorb((inverse_transform(pair.Z) - rn.matrix).frobenius_norm() / (1 + nt * nt));
        if (rn.matrix.frobenius_norm() > 0 && !(pair.Z.is_zero(1e-14))) {
            // Z_T is normal when T is.
            const QMat comm = pair.Z * pair.Z.adjoint() - pair.Z.adjoint() * pair.Z;
            res.absorb(comm.frobenius_norm() / std::max(1.0, operator_norm(pair.Z)));
        }
        // Positive matrices keep their spherical spectrum in [0, +inf).
        const QMat x = random_matrix(rng, n, n);
        const auto pos_pvm = spectral_decompose(QMat(x.adjoint() * x));
        for (const auto& p : pos_pvm.support) {
            res.absorb(std::max(0.0, -p.alpha));
            res.absorb(std::abs(p.beta));
        }
    }
    res.finish();
    return res;
}

}  // namespace checks

/// Runs every invariant family with per-family deterministic seeds.
inline std::vector<CheckResult> run_verification(std::uint64_t seed, int trials, Eigen::Index max_n = 8) {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    std::vector<CheckResult> out;
    int family = 0;
    auto next = [&](auto&& fn, auto&&... extra) {
        Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(family++));
        out.push_back(fn(rng, trials, extra...));
    };
    next([](Rng& r, int t) { return checks::quaternion_algebra(r, t); });
    next([](Rng& r, int t) { return checks::slice_form_reconstruction(r, t); });
    next([](Rng& r, int t) { return checks::sphere_conjugation(r, t); });
    next([&](Rng& r, int t) { return checks::chi_homomorphism(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::chi_eigenvalue_pairing(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::study_determinant(r, t, std::min<Eigen::Index>(max_n, 6)); });
    next([&](Rng& r, int t) { return checks::sqrt_and_norm(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::left_mult_laws(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::theorem_c_roundtrip(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::theorem_c_rejection(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::slice_decomposition(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::complex_extension(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::spectral_reconstruction(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::pvm_uniqueness_via_transform(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::teo1_laws(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::spectral_measures(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::real_axis_and_delta(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::theorem_e(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::resolvent_identity(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::eigenvector_promotion(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::star_conjugating_unitary(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::theorem_b_model(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::twist_left_multiplications(r, t, max_n); });
    next([&](Rng& r, int t) { return checks::bounded_transform_laws(r, t, max_n); });
    return out;
}

}  // namespace qspectra
