#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "qspectra/left_spectrum.hpp"
#include "qspectra/spectral.hpp"

namespace qspectra {

using json = nlohmann::json;

// Quaternion <-> [w, x, y, z]
inline json to_json(const Quat& q) { return json::array({q.w, q.x, q.y, q.z}); }

inline Quat quaternion_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("quaternion must be a 4-array");
    for (const auto& c : j)
        if (!c.is_number()) throw ParseError("quaternion components must be numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

// QMatrix <-> {"n": n, "entries": [[[w,x,y,z], ...], ...]} row-major
inline json to_json(const QMat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.rows()}, {"entries", std::move(rows)}};
}

inline QMat qmatrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw ParseError("matrix needs fields \"n\" and \"entries\"");
    const auto n = j.at("n").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (n <= 0 || !entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n)
        throw ParseError("matrix entries must hold n rows");
    QMat m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = entries[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw ParseError("matrix rows must hold n entries");
        for (Eigen::Index c = 0; c < n; ++c)
            m.set(r, c, quaternion_from_json(row[static_cast<size_t>(c)]));
    }
    return m;
}

inline json vector_to_json(const QMat& v) {
    json out = json::array();
    for (Eigen::Index r = 0; r < v.rows(); ++r) out.push_back(to_json(v(r, 0)));
    return out;
}

// LeftScalarMultiplication <-> {"Li": QMatrix, "Lj": QMatrix}
inline json to_json(const LeftScalarMultiplication<double>& l) {
    return json{{"Li", to_json(l.li())}, {"Lj", to_json(l.lj())}};
}

inline LeftScalarMultiplication<double> left_mult_from_json(const json& j) {
    if (!j.is_object() || !j.contains("Li") || !j.contains("Lj"))
        throw ParseError("left multiplication needs fields \"Li\" and \"Lj\"");
    return {qmatrix_from_json(j.at("Li")), qmatrix_from_json(j.at("Lj"))};
}

// IqPVM <-> {"unit": [..], "support": [[alpha,beta],..], "projectors": [..], "L": {..}}
inline json to_json(const IqPVM<double>& pvm) {
    json support = json::array();
    for (const auto& p : pvm.support) support.push_back(json::array({p.alpha, p.beta}));
    json projectors = json::array();
    for (const auto& p : pvm.projectors) projectors.push_back(to_json(p));
    return json{{"unit", to_json(pvm.unit)},
                {"support", std::move(support)},
                {"projectors", std::move(projectors)},
                {"L", to_json(pvm.left)}};
}

inline IqPVM<double> pvm_from_json(const json& j) {
    if (!j.is_object() || !j.contains("unit") || !j.contains("support") || !j.contains("projectors") ||
        !j.contains("L"))
        throw ParseError("pvm needs fields \"unit\", \"support\", \"projectors\", \"L\"");
    IqPVM<double> pvm;
    pvm.unit = quaternion_from_json(j.at("unit"));
    for (const auto& p : j.at("support")) {
        if (!p.is_array() || p.size() != 2) throw ParseError("support points are [alpha, beta] pairs");
        pvm.support.push_back({p[0].get<double>(), p[1].get<double>(), pvm.unit});
    }
    for (const auto& p : j.at("projectors")) pvm.projectors.push_back(qmatrix_from_json(p));
    if (pvm.support.size() != pvm.projectors.size())
        throw ParseError("support and projectors must have equal length");
    pvm.left = left_mult_from_json(j.at("L"));
    return pvm;
}

inline json to_json(const LeftSpectrumReport<double>& report) {
    json point = json::array(), samples = json::array();
    for (const auto& p : report.point) point.push_back(json::array({p.alpha, p.beta}));
    for (const auto& [q, m] : report.resolvent_samples)
        samples.push_back(json{{"q", to_json(q)}, {"matrix", to_json(m)}});
    return json{{"point", std::move(point)},
                {"residual", json::array()},
                {"continuous", json::array()},
                {"resolvent_samples", std::move(samples)}};
}

}  // namespace qspectra
