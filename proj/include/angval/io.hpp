#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "angval/extendability.hpp"
#include "angval/klain.hpp"
#include "angval/polytope.hpp"

namespace angval {
namespace io {

using nlohmann::json;

inline json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    if (j.is_object() && j.contains("re"))
        return Complex(j["re"].get<double>(), j.value("im", 0.0));
    throw Error(where + ": expected a number, [re, im] pair, or {re, im} object");
}

// Polytope schema: {"n": int, "vertices": [[x_1, ..., x_n], ...]}.
inline Polytope polytope_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("vertices"))
        throw Error("polytope: expected an object with fields 'n' and 'vertices'");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
        throw Error("polytope.n: expected a positive integer");
    const int n = j["n"].get<int>();
    const auto& vs = j["vertices"];
    if (!vs.is_array() || vs.empty())
        throw Error("polytope.vertices: expected a non-empty array");
    Mat verts(n, vs.size());
    for (size_t i = 0; i < vs.size(); ++i) {
        const auto& row = vs[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw Error("polytope.vertices[" + std::to_string(i) + "]: expected " +
                        std::to_string(n) + " coordinates, got " +
                        std::to_string(row.size()));
        for (int c = 0; c < n; ++c) {
            if (!row[c].is_number())
                throw Error("polytope.vertices[" + std::to_string(i) + "][" +
                            std::to_string(c) + "]: expected a number");
            verts(c, i) = row[c].get<double>();
        }
    }
    Polytope p(std::move(verts));
    if (p.vertex_count() != static_cast<int>(vs.size()))
        throw Error("polytope.vertices: duplicate vertices are not allowed");
    auto bad = p.non_extreme_vertices();
    if (!bad.empty()) {
        std::string ids;
        for (int b : bad) ids += (ids.empty() ? "" : ", ") + std::to_string(b);
        throw Error("polytope.vertices: non-extreme vertices at indices [" + ids + "]");
    }
    return p;
}

inline json polytope_to_json(const Polytope& p) {
    json vs = json::array();
    for (int i = 0; i < p.vertex_count(); ++i) {
        json row = json::array();
        for (int c = 0; c < p.ambient_dim(); ++c) row.push_back(p.vertices()(c, i));
        vs.push_back(std::move(row));
    }
    return json{{"n", p.ambient_dim()}, {"vertices", std::move(vs)}};
}

struct LoadedQuadratic {
    QuadraticForm form;
    bool symmetrized_warning = false;
};

// Quadratic form schema: {"n": int, "k": int, "matrix": [[entry, ...], ...]}
// with entries numbers, [re, im] pairs, or {re, im} objects.  Asymmetric
// input is symmetrized and flagged.
inline LoadedQuadratic quadratic_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("matrix"))
        throw Error("quadratic: expected an object with fields 'n', 'k', 'matrix'");
    const int n = j["n"].get<int>();
    const int k = j["k"].get<int>();
    long d = binomial(n, k);
    const auto& m = j["matrix"];
    if (!m.is_array() || static_cast<long>(m.size()) != d)
        throw Error("quadratic.matrix: expected " + std::to_string(d) + " rows (C(" +
                    std::to_string(n) + "," + std::to_string(k) + ")), got " +
                    std::to_string(m.size()));
    Eigen::MatrixXcd mat(d, d);
    for (long r = 0; r < d; ++r) {
        if (!m[r].is_array() || static_cast<long>(m[r].size()) != d)
            throw Error("quadratic.matrix[" + std::to_string(r) + "]: expected " +
                        std::to_string(d) + " entries");
        for (long c = 0; c < d; ++c)
            mat(r, c) = complex_from_json(
                m[r][c], "quadratic.matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    QuadraticForm q(n, k, std::move(mat));
    return {q, q.was_symmetrized()};
}

inline json quadratic_to_json(const QuadraticForm& q) {
    json rows = json::array();
    for (long r = 0; r < q.matrix().rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < q.matrix().cols(); ++c)
            row.push_back(json::array({q.matrix()(r, c).real(), q.matrix()(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return json{{"n", q.n()}, {"k", q.k()}, {"matrix", std::move(rows)}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
    return j;
}

inline Polytope load_polytope(const std::string& path) {
    return polytope_from_json(load_json_file(path));
}

inline LoadedQuadratic load_quadratic(const std::string& path) {
    return quadratic_from_json(load_json_file(path));
}

// Named-function registry: "const:c", "const:re,im", "quad:<file>",
// "hw:m1,m2", "sph:p", "p4:<coord>", and "dual:<spec>" for the Hodge
// complement pullback.  (n, k) pin the Grassmannian the function lives on.
inline KlainFunction parse_klain(const std::string& spec, int n, int k) {
    auto split = spec.find(':');
    std::string head = spec.substr(0, split);
    std::string rest = split == std::string::npos ? "" : spec.substr(split + 1);

    auto parse_num = [&](const std::string& s, const char* what) {
        try {
            size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw Error("");
            return v;
        } catch (...) {
            throw Error(std::string("klain spec '") + spec + "': bad " + what + " '" + s + "'");
        }
    };

    if (head == "const") {
        if (rest.empty()) throw Error("klain spec 'const:' needs a value");
        auto comma = rest.find(',');
        double re = parse_num(rest.substr(0, comma), "real part");
        double im = comma == std::string::npos
                        ? 0.0
                        : parse_num(rest.substr(comma + 1), "imaginary part");
        return KlainFunction::constant(n, k, Complex(re, im));
    }
    if (head == "quad") {
        auto loaded = load_quadratic(rest);
        if (loaded.form.n() != n || loaded.form.k() != k)
            throw Error("klain spec 'quad': file is for (n,k) = (" +
                        std::to_string(loaded.form.n()) + "," +
                        std::to_string(loaded.form.k()) + "), requested (" +
                        std::to_string(n) + "," + std::to_string(k) + ")");
        return KlainFunction::quadratic(loaded.form);
    }
    if (head == "hw") {
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw Error("klain spec 'hw' needs two weights: hw:m1,m2");
        int m1 = static_cast<int>(parse_num(rest.substr(0, comma), "m1"));
        int m2 = static_cast<int>(parse_num(rest.substr(comma + 1), "m2"));
        if (k != 2) throw Error("klain spec 'hw': highest-weight vectors live on Gr_2");
        return KlainFunction::highest_weight(n, m1, m2);
    }
    if (head == "sph") {
        if (n != 3 || k != 1)
            throw Error("klain spec 'sph': the spherical family lives on Gr_1(R^3)");
        return KlainFunction::spherical(static_cast<int>(parse_num(rest, "p")));
    }
    if (head == "p4") {
        long idx = static_cast<long>(parse_num(rest, "coordinate index"));
        if (idx < 0 || idx >= binomial(n, k))
            throw Error("klain spec 'p4': coordinate index out of range");
        return KlainFunction(n, k, "p4:" + rest, [idx](const KVector& xi) {
            return std::pow(xi[idx], 4);
        });
    }
    if (head == "dual") {
        if (rest.empty()) throw Error("klain spec 'dual:' needs an inner spec");
        return KlainFunction::hodge_dual(parse_klain(rest, n, n - k));
    }
    throw Error("unknown klain spec '" + spec +
                "' (expected const:, quad:, hw:, sph:, p4:, or dual:)");
}

inline json relation_report_to_json(const RelationReport& rep) {
    json rs = json::array();
    for (const auto& r : rep.residuals)
        rs.push_back(json{{"basis", r.label},
                          {"re", r.residual.real()},
                          {"im", r.residual.imag()},
                          {"abs", std::abs(r.residual)}});
    return json{{"residuals", std::move(rs)}, {"max_abs_residual", rep.max_abs},
                {"pass_tol", rep.pass_tol},   {"fail_tol", rep.fail_tol},
                {"seed", rep.seed},           {"verdict", to_string(rep.verdict)}};
}

inline std::string relation_report_to_csv(const RelationReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "basis,re,im,abs\n";
    for (const auto& r : rep.residuals)
        out << r.label << "," << r.residual.real() << "," << r.residual.imag() << ","
            << std::abs(r.residual) << "\n";
    return out.str();
}

}  // namespace io
}  // namespace angval
