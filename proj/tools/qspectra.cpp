// qspectra — batch front end for quaternionic spectral computations.
//
// Subcommands: decompose, spectrum, left-spectrum, calculus, transform,
// verify, demo-l2. Input matrices are JSON (see README). Exit codes:
// 0 success, 1 parse/config, 2 precondition, 3 numerical failure,
// 4 verification failure.

#include <CLI11.hpp>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qspectra/bounded_transform.hpp"
#include "qspectra/io.hpp"
#include "qspectra/verify.hpp"

namespace {

using namespace qspectra;

int log_level() {
    const char* env = std::getenv("QSPECTRA_LOG");
    if (env == nullptr || *env == '\0' || std::string(env) == "0") return 0;
    if (std::string(env) == "debug" || std::string(env) == "2") return 2;
    return 1;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[qspectra] " << msg << "\n";
}

struct Config {
    std::string input;
    std::string unit = "i";
    double cluster_tol = -1;  // auto
    double sing_tol = tol::sing;
    std::uint64_t seed = 42;
    int trials = 50;
    std::string format = "json";
    std::string phi = "z";
};

Quat parse_unit(const std::string& text) {
    if (text == "i") return Quat::unit_i();
    if (text == "j") return Quat::unit_j();
    if (text == "k") return Quat::unit_k();
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("unit must be i|j|k or a quaternion 4-array");
    const Quat q = quaternion_from_json(j);
    if (!q.is_imaginary_unit()) throw ConfigError("unit must be an imaginary unit");
    return q;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("input is not valid JSON: " + path);
    return j;
}

QMat load_matrix(const Config& cfg) {
    if (cfg.input.empty()) throw ConfigError("--input is required for this subcommand");
    return qmatrix_from_json(load_json(cfg.input));
}

json tolerance_block(const Config& cfg, double cluster_used) {
    return json{{"cluster_tol", cluster_used},
                {"sing_tol", cfg.sing_tol},
                {"unit_tol", tol::unit},
                {"normal_tol", tol::normal},
                {"kernel_tol", tol::kernel}};
}

std::string fmt_quat(const Quat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

void print_matrix_text(std::ostream& os, const std::string& name, const QMat& m) {
    os << name << " =\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << "  ";
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << fmt_quat(m(r, c)) << (c + 1 < m.cols() ? " " : "");
        os << "\n";
    }
}

void emit(const Config& cfg, const json& out, const std::function<void(std::ostream&)>& text) {
    if (cfg.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        text(std::cout);
    }
}

// --- phi expressions: sums of terms c * z^a * zbar^b --------------------

struct PhiTerm {
    Quat coefficient = Quat::one();
    int z_power = 0;
    int zbar_power = 0;
};

std::vector<PhiTerm> parse_phi(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    if (text.empty()) throw ParseError("empty phi expression");

    std::vector<PhiTerm> terms;
    size_t pos = 0;
    auto parse_power = [&](int& power) {
        power = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            size_t len = 0;
            power = std::stoi(text.substr(pos), &len);
            if (len == 0 || power < 0) throw ParseError("bad exponent in phi");
            pos += len;
        }
    };
    while (pos < text.size()) {
        double sign = 1;
        while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') sign = -sign;
            ++pos;
        }
        if (pos >= text.size()) throw ParseError("dangling sign in phi");
        PhiTerm term;
        term.coefficient = Quat(sign);
        bool expect_factor = true;
        while (expect_factor) {
            if (text.compare(pos, 7, "conj(z)") == 0) {
                pos += 7;
                int p = 0;
                parse_power(p);
                term.zbar_power += p;
            } else if (text.compare(pos, 4, "zbar") == 0) {
                pos += 4;
                int p = 0;
                parse_power(p);
                term.zbar_power += p;
            } else if (pos < text.size() && text[pos] == 'z') {
                ++pos;
                int p = 0;
                parse_power(p);
                term.z_power += p;
            } else if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
                const char u = text[pos++];
                term.coefficient = term.coefficient * (u == 'i'   ? Quat::unit_i()
                                                       : u == 'j' ? Quat::unit_j()
                                                                  : Quat::unit_k());
            } else {
                size_t len = 0;
                double value = 0;
                try {
                    value = std::stod(text.substr(pos), &len);
                } catch (...) {
                    throw ParseError("unrecognized factor in phi at '" + text.substr(pos) + "'");
                }
                if (len == 0) throw ParseError("unrecognized factor in phi at '" + text.substr(pos) + "'");
                pos += len;
                term.coefficient = term.coefficient * value;
            }
            expect_factor = pos < text.size() && text[pos] == '*';
            if (expect_factor) ++pos;
        }
        terms.push_back(term);
        if (pos < text.size() && text[pos] != '+' && text[pos] != '-')
            throw ParseError("expected + or - in phi at '" + text.substr(pos) + "'");
    }
    return terms;
}

std::vector<Quat> evaluate_phi(const std::vector<PhiTerm>& terms, const IqPVM<double>& pvm) {
    std::vector<Quat> values;
    for (const auto& p : pvm.support) {
        const Quat z = p.value();
        Quat v = Quat::zero();
        for (const auto& term : terms) {
            Quat w = term.coefficient;
            for (int a = 0; a < term.z_power; ++a) w = w * z;
            for (int b = 0; b < term.zbar_power; ++b) w = w * z.conj();
            v = v + w;
        }
        values.push_back(v);
    }
    return values;
}

// --- subcommands ---------------------------------------------------------

json support_json(const IqPVM<double>& pvm) {
    json support = json::array();
    for (const auto& p : pvm.support) support.push_back(json::array({p.alpha, p.beta}));
    return support;
}

int run_decompose(const Config& cfg) {
    const Quat unit = parse_unit(cfg.unit);
    const QMat t = load_matrix(cfg);
    log_info("decomposing a " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) + " matrix");
    const auto sd = decompose(t, unit);
    const auto pvm = spectral_decompose(t, unit, cfg.cluster_tol);
    const double cluster_used =
        cfg.cluster_tol > 0 ? cfg.cluster_tol : 1e-8 * std::max(operator_norm(t), 1e-12);
    const double rec_err = (reconstruct(pvm) - t).frobenius_norm();

    json out{{"command", "decompose"},
             {"tolerances", tolerance_block(cfg, cluster_used)},
             {"unit", to_json(unit)},
             {"A", to_json(sd.A)},
             {"B", to_json(sd.B)},
             {"J", to_json(sd.J)},
             {"support", support_json(pvm)},
             {"projectors", json::array()},
             {"L", to_json(pvm.left)},
             {"reconstruction_error", rec_err}};
    for (const auto& p : pvm.projectors) out["projectors"].push_back(to_json(p));
    emit(cfg, out, [&](std::ostream& os) {
        print_matrix_text(os, "A", sd.A);
        print_matrix_text(os, "B", sd.B);
        print_matrix_text(os, "J", sd.J);
        os << "support:";
        for (const auto& p : pvm.support) os << " (" << p.alpha << ", " << p.beta << ")";
        os << "\nreconstruction error = " << rec_err << "\n";
    });
    return 0;
}

int run_spectrum(const Config& cfg) {
    const Quat unit = parse_unit(cfg.unit);
    const QMat t = load_matrix(cfg);
    const auto pvm = spectral_decompose(t, unit, cfg.cluster_tol);
    const auto cls = classify_spectrum(pvm);
    const double cluster_used =
        cfg.cluster_tol > 0 ? cfg.cluster_tol : 1e-8 * std::max(operator_norm(t), 1e-12);

    json out{{"command", "spectrum"},
             {"tolerances", tolerance_block(cfg, cluster_used)},
             {"unit", to_json(unit)},
             {"point", support_json(pvm)},
             {"residual", json::array()},
             {"continuous", json::array()},
             {"projector_ranks", json::array()},
             {"pvm", to_json(pvm)}};
    for (const auto& p : pvm.projectors)
        out["projector_ranks"].push_back(std::llround(p.slice_a().trace().real()));
    emit(cfg, out, [&](std::ostream& os) {
        os << "point spectrum (alpha, beta, rank):\n";
        for (size_t k = 0; k < pvm.size(); ++k)
            os << "  (" << pvm.support[k].alpha << ", " << pvm.support[k].beta << ")  rank "
               << std::llround(pvm.projectors[k].slice_a().trace().real()) << "\n";
        os << "residual spectrum: empty\ncontinuous spectrum: empty\n";
        os << "spherical spectrum: circularization of " << cls.point.size() << " point(s)\n";
    });
    return 0;
}

int run_left_spectrum(const Config& cfg) {
    const Quat unit = parse_unit(cfg.unit);
    const QMat t = load_matrix(cfg);
    const auto pvm = spectral_decompose(t, unit, cfg.cluster_tol);
    const auto report = left_spectrum_report(t, pvm.left, pvm);
    const double cluster_used =
        cfg.cluster_tol > 0 ? cfg.cluster_tol : 1e-8 * std::max(operator_norm(t), 1e-12);
    json out = to_json(report);
    out["command"] = "left-spectrum";
    out["tolerances"] = tolerance_block(cfg, cluster_used);
    out["unit"] = to_json(unit);
    emit(cfg, out, [&](std::ostream& os) {
        os << "left point spectrum:";
        for (const auto& p : report.point) os << " (" << p.alpha << ", " << p.beta << ")";
        os << "\nresidual: empty\ncontinuous: empty (finite dimension)\n";
        os << "resolvent samples: " << report.resolvent_samples.size() << "\n";
    });
    return 0;
}

int run_calculus(const Config& cfg) {
    const Quat unit = parse_unit(cfg.unit);
    const QMat t = load_matrix(cfg);
    const auto pvm = spectral_decompose(t, unit, cfg.cluster_tol);
    const auto terms = parse_phi(cfg.phi);
    const auto values = evaluate_phi(terms, pvm);
    const QMat result = integrate(values, pvm);
    const double cluster_used =
        cfg.cluster_tol > 0 ? cfg.cluster_tol : 1e-8 * std::max(operator_norm(t), 1e-12);

    bool invertible = true;
    for (const auto& v : values)
        if (v.norm() == 0.0) invertible = false;

    json out{{"command", "calculus"},
             {"tolerances", tolerance_block(cfg, cluster_used)},
             {"unit", to_json(unit)},
             {"phi", cfg.phi},
             {"values", json::array()},
             {"result", to_json(result)},
             {"invertible", invertible}};
    for (const auto& v : values) out["values"].push_back(to_json(v));
    if (invertible) out["inverse"] = to_json(invert_via_calculus(values, pvm));
    emit(cfg, out, [&](std::ostream& os) {
        os << "phi = " << cfg.phi << "\nvalues on the support:";
        for (const auto& v : values) os << " " << fmt_quat(v);
        os << "\n";
        print_matrix_text(os, "phi(T)", result);
        os << "invertible on the support: " << (invertible ? "yes" : "no") << "\n";
    });
    return 0;
}

int run_transform(const Config& cfg) {
    const Quat unit = parse_unit(cfg.unit);
    const QMat t = load_matrix(cfg);
    const auto pair = bounded_transform(t);
    const double znorm = operator_norm(pair.Z);
    const double roundtrip = (inverse_transform(pair.Z) - t).frobenius_norm();
    const auto direct = spectral_decompose(t, unit, cfg.cluster_tol);
    const auto pushed = decompose_via_transform(t, unit, cfg.cluster_tol);
    double agreement = 0;
    if (direct.size() == pushed.size())
        for (size_t k = 0; k < direct.size(); ++k)
            agreement = std::max(agreement,
                                 (direct.projectors[k] - pushed.projectors[k]).frobenius_norm());
    else
        agreement = std::numeric_limits<double>::infinity();
    const double cluster_used =
        cfg.cluster_tol > 0 ? cfg.cluster_tol : 1e-8 * std::max(operator_norm(t), 1e-12);

    json out{{"command", "transform"},
             {"tolerances", tolerance_block(cfg, cluster_used)},
             {"unit", to_json(unit)},
             {"C", to_json(pair.C)},
             {"Z", to_json(pair.Z)},
             {"Z_norm", znorm},
             {"roundtrip_error", roundtrip},
             {"pushforward_support", support_json(pushed)},
             {"projector_agreement", agreement}};
    emit(cfg, out, [&](std::ostream& os) {
        print_matrix_text(os, "C", pair.C);
        print_matrix_text(os, "Z", pair.Z);
        os << "||Z|| = " << znorm << "\nroundtrip error = " << roundtrip
           << "\npushforward projector agreement = " << agreement << "\n";
    });
    return 0;
}

int run_verify(const Config& cfg) {
    if (cfg.trials < 1) throw ConfigError("--trials must be >= 1");
    std::vector<CheckResult> results;
    if (!cfg.input.empty()) {
        // Validate a user-supplied left scalar multiplication.
        CheckResult check{"input_left_multiplication", 1, 0, 0};
        const auto l = left_mult_from_json(load_json(cfg.input));
        if (!is_left_scalar_multiplication(l.li(), l.lj())) {
            check.pass = false;
            check.note = "NotLeftScalarMultiplication: generator relations violated";
        } else {
            const auto basis = basis_from_left_mult(l);
            const auto back = from_basis(basis);
            check.max_residual = std::max((back.li() - l.li()).frobenius_norm(),
                                          (back.lj() - l.lj()).frobenius_norm());
            check.tolerance = 1e-9;
            check.finish();
        }
        results.push_back(check);
    }
    const auto suite = run_verification(cfg.seed, cfg.trials);
    results.insert(results.end(), suite.begin(), suite.end());

    json out{{"command", "verify"},
             {"seed", cfg.seed},
             {"trials", cfg.trials},
             {"checks", json::array()}};
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        out["checks"].push_back(json{{"name", r.name},
                                     {"trials", r.trials},
                                     {"max_residual", r.max_residual},
                                     {"tolerance", r.tolerance},
                                     {"pass", r.pass},
                                     {"note", r.note}});
    }
    out["pass"] = all;
    emit(cfg, out, [&](std::ostream& os) {
        for (const auto& r : results) {
            os << (r.pass ? "PASS " : "FAIL ") << r.name << "  max_residual=" << r.max_residual
               << " tol=" << r.tolerance;
            if (!r.note.empty()) os << "  (" << r.note << ")";
            os << "\n";
        }
        os << (all ? "all checks passed" : "verification failed") << "\n";
    });
    if (!all) {
        std::string failing;
        for (const auto& r : results)
            if (!r.pass) failing += (failing.empty() ? "" : ", ") + r.name;
        throw VerificationFailure(failing);
    }
    return 0;
}

int run_demo_l2(const Config& cfg) {
    if (cfg.trials < 1) throw ConfigError("--trials must be >= 1");
    const Eigen::Index n = cfg.trials;
    Rng rng(cfg.seed);
    std::vector<double> samples;
    for (Eigen::Index r = 0; r < n; ++r) samples.push_back(rng.uniform(0.0, 1.0));
    std::sort(samples.begin(), samples.end());
    QMat t(n, n);
    for (Eigen::Index r = 0; r < n; ++r) t.set(r, r, Quat(samples[static_cast<size_t>(r)]));
    const auto pvm = spectral_decompose(t);
    const auto model = cyclic_l2_model(pvm);
    bool all_real = true;
    for (const auto& p : pvm.support) all_real = all_real && p.beta == 0.0;

    json out{{"command", "demo-l2"},
             {"samples", samples},
             {"support", support_json(pvm)},
             {"all_real", all_real},
             {"cyclic_blocks", json::array()}};
    for (const auto& blk : model)
        out["cyclic_blocks"].push_back(json{{"dimension", blk.isometry.cols()},
                                            {"total_mass", blk.measure.total_mass()}});
    emit(cfg, out, [&](std::ostream& os) {
        os << "multiplication by t on H^" << n << " sampling [0,1]\nspectrum:";
        for (const auto& p : pvm.support) os << " " << p.alpha;
        os << "\nall support points real: " << (all_real ? "yes" : "no") << "\ncyclic blocks: " << model.size()
           << "\n";
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"quaternionic spectral theory at matrix scale"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        auto* opt = cmd->add_option("--input", cfg.input, "path to the input JSON file");
        if (needs_input) opt->required();
        cmd->add_option("--unit", cfg.unit, "slice unit: i|j|k or a quaternion 4-array");
        cmd->add_option("--cluster-tol", cfg.cluster_tol, "eigenvalue clustering tolerance (<=0: auto)");
        cmd->add_option("--sing-tol", cfg.sing_tol, "singularity threshold for det_c decisions");
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_option("--trials", cfg.trials, "trial count / sample count");
        cmd->add_option("--format", cfg.format, "output format: json|text")
            ->check(CLI::IsMember({"json", "text"}));
        return cmd;
    };

    auto* c_decompose = add_common(app.add_subcommand("decompose", "slice + spectral decomposition"), true);
    auto* c_spectrum = add_common(app.add_subcommand("spectrum", "spherical spectrum classification"), true);
    auto* c_left = add_common(app.add_subcommand("left-spectrum", "left spectrum w.r.t. the associated L"), true);
    auto* c_calc = add_common(app.add_subcommand("calculus", "functional calculus phi(T)"), true);
    c_calc->add_option("--phi", cfg.phi, "integrand: sums of c*z^a*zbar^b (e.g. \"z\", \"conj(z)\", \"1\")");
    auto* c_transform = add_common(app.add_subcommand("transform", "bounded transform C_T, Z_T"), true);
    auto* c_verify = add_common(app.add_subcommand("verify", "seeded property suites"), false);
    auto* c_demo = add_common(app.add_subcommand("demo-l2", "diagonal multiplication operator demo"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (c_decompose->parsed()) return run_decompose(cfg);
        if (c_spectrum->parsed()) return run_spectrum(cfg);
        if (c_left->parsed()) return run_left_spectrum(cfg);
        if (c_calc->parsed()) return run_calculus(cfg);
        if (c_transform->parsed()) return run_transform(cfg);
        if (c_verify->parsed()) return run_verify(cfg);
        if (c_demo->parsed()) return run_demo_l2(cfg);
    } catch (const VerificationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
