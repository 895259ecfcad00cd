#include "nilforge/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace nilforge {

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw FormatError("expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw FormatError(std::string("bad rational: ") + e.what());
    }
}

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw FormatError("expected an array of rationals");
    Vec v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Json matrix_json(const Matrix& m) {
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r)));
    return a;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw FormatError("expected a nonempty list of rows");
    std::vector<Vec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(r));
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) throw FormatError("ragged matrix");
    return Matrix::from_rows(rows);
}

Json algebra_json(const NilAlgebra& a, const Pointing* pointing) {
    Json j;
    j["dim"] = a.dim();
    j["labels"] = a.labels();
    Json prods = Json::object();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = i; k < a.dim(); ++k) {
            const auto& row = a.product(i, k);
            if (row.empty()) continue;
            Json entries = Json::array();
            for (const auto& [c, v] : row) entries.push_back(Json::array({c + 1, to_string(v)}));
            prods[std::to_string(i + 1) + "," + std::to_string(k + 1)] = entries;
        }
    j["products"] = prods;
    if (pointing) j["pointing"] = vec_json(pointing->omega);
    return j;
}

NilAlgebra algebra_from_json(const Json& j, Pointing* pointing) {
    try {
        std::size_t n = j.at("dim").get<std::size_t>();
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            labels = j.at("labels").get<std::vector<std::string>>();
        } else {
            for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
        }
        if (labels.size() != n) throw FormatError("label count differs from dim");
        NilAlgebra a(labels);
        for (const auto& [key, entries] : j.at("products").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos) throw FormatError("product key must be \"i,j\"");
            std::size_t i = std::stoul(key.substr(0, comma)), k = std::stoul(key.substr(comma + 1));
            if (i < 1 || k < 1 || i > n || k > n) throw FormatError("product index out of range: " + key);
            Vec v = zero_vec(n);
            for (const auto& e : entries) {
                std::size_t c = e.at(0).get<std::size_t>();
                if (c < 1 || c > n) throw FormatError("product component out of range in " + key);
                v[c - 1] += rational_from_json(e.at(1));
            }
            a.set_product(i - 1, k - 1, v);
        }
        if (pointing && j.contains("pointing")) {
            pointing->omega = vec_from_json(j.at("pointing"));
            if (pointing->omega.size() != n) throw FormatError("pointing length differs from dim");
        }
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed algebra: ") + e.what());
    } catch (const std::logic_error& e) {
        throw FormatError(std::string("malformed algebra: ") + e.what());
    }
}

Json poly_json(const MPoly& p) {
    Json j;
    j["vars"] = p.vars();
    j["poly"] = p.to_string();
    return j;
}

MPoly poly_from_json(const Json& j) {
    try {
        VarList vars = j.at("vars").get<VarList>();
        return parse_poly(j.at("poly").get<std::string>(), vars);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed polynomial document: ") + e.what());
    }
}

Json grading_json(const Grading& g) {
    Json cols = Json::array();
    for (std::size_t c = 0; c < g.basis.cols(); ++c) cols.push_back(vec_json(g.basis.col(c)));
    Json j;
    j["basis"] = cols;
    j["weights"] = g.weights;
    return j;
}

Grading grading_from_json(const Json& j) {
    try {
        std::vector<Vec> cols;
        for (const auto& c : j.at("basis")) cols.push_back(vec_from_json(c));
        if (cols.empty()) throw FormatError("empty grading basis");
        Grading g{Matrix::from_columns(cols, cols[0].size()), j.at("weights").get<std::vector<unsigned>>()};
        if (g.weights.size() != cols.size()) throw FormatError("one weight per basis column required");
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed grading: ") + e.what());
    }
}

std::string read_text(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace nilforge
