#pragma once

// Shared helpers for the test programs. The oracles here are deliberately
// naive dense implementations that share no code with the library's sparse
// elimination, so agreement between the two is meaningful.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nilforge/algebra.hpp"
#include "nilforge/io.hpp"
#include "nilforge/milnor.hpp"
#include "nilforge/nilpoly.hpp"

namespace testing {

using nilforge::Rational;
using nilforge::Vec;

inline std::string fixture_path(const std::string& name) { return std::string(NILFORGE_FIXTURES) + "/" + name; }

inline nilforge::Json load_fixture(const std::string& name) {
    return nilforge::parse_json(nilforge::read_text(fixture_path(name)));
}

inline nilforge::MPoly load_poly(const std::string& name) { return nilforge::poly_from_json(load_fixture(name)); }

struct GermRow {
    std::string name, germ;
    std::size_t dim = 0, nil_index = 0;
    std::vector<std::size_t> hilbert;
    std::size_t der_dim = 0;  // 0 when the table records none
};

inline std::vector<GermRow> germ_table() {
    std::vector<GermRow> rows;
    for (const auto& j : load_fixture("milnor_table.json")) {
        GermRow r;
        r.name = j.at("name");
        r.germ = j.at("germ");
        r.dim = j.at("dim");
        r.nil_index = j.at("nil_index");
        if (j.contains("hilbert")) r.hilbert = j.at("hilbert").get<std::vector<std::size_t>>();
        if (j.contains("der_dim")) r.der_dim = j.at("der_dim");
        rows.push_back(r);
    }
    return rows;
}

inline const GermRow& germ(const std::string& name) {
    static const std::vector<GermRow> rows = germ_table();
    for (const auto& r : rows)
        if (r.name == name) return r;
    throw std::out_of_range("no germ " + name);
}

inline nilforge::NilAlgebra milnor(const std::string& name) {
    return nilforge::milnor_algebra(nilforge::parse_poly(germ(name).germ)).algebra;
}

inline Rational random_rational(std::mt19937& rng, int range = 9, int den = 5) {
    std::uniform_int_distribution<int> n(-range, range), d(1, den);
    return nilforge::make_rational(n(rng), d(rng));
}

inline Vec random_vec(std::mt19937& rng, std::size_t n, int range = 9, int den = 5) {
    Vec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_rational(rng, range, den));
    return v;
}

// Dense Gauss-Jordan on a copy; returns the nonzero reduced rows.
inline std::vector<Vec> dense_basis(std::vector<Vec> m) {
    std::size_t rank = 0;
    if (m.empty()) return m;
    std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t p = rank;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    m.resize(rank);
    return m;
}

inline std::size_t dense_rank(std::vector<Vec> m) { return dense_basis(std::move(m)).size(); }

// Dimension of {x : M x = 0} for M given by rows over `cols` unknowns.
inline std::size_t dense_nullity(const std::vector<Vec>& rows, std::size_t cols) {
    return cols - dense_rank(rows);
}

// Structure constants as a dense tensor: c[i][j][k] = coefficient of e_k in e_i e_j.
inline std::vector<std::vector<Vec>> structure_tensor(const nilforge::NilAlgebra& a) {
    std::size_t n = a.dim();
    std::vector<std::vector<Vec>> c(n, std::vector<Vec>(n, Vec(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [k, v] : a.product(i, j)) c[i][j][k] = v;
    return c;
}

inline Vec tensor_mul(const std::vector<std::vector<Vec>>& c, const Vec& x, const Vec& y) {
    std::size_t n = x.size();
    Vec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            for (std::size_t k = 0; k < n; ++k) out[k] += x[i] * y[j] * c[i][j][k];
        }
    }
    return out;
}

// Dimension of the derivation algebra from the dense n³ × n² system
// D(e_i e_j) = D(e_i) e_j + e_i D(e_j), unknown D(r, s) at column r·n + s.
inline std::size_t oracle_derivation_dim(const nilforge::NilAlgebra& a) {
    auto c = structure_tensor(a);
    std::size_t n = a.dim();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec row(n * n);
                // D applied to e_i e_j, coordinate k: Σ_m c_ijm D(k, m)
                for (std::size_t m = 0; m < n; ++m) row[k * n + m] += c[i][j][m];
                // D(e_i) e_j: Σ_m D(m, i) c_mjk ; e_i D(e_j): Σ_m D(m, j) c_imk
                for (std::size_t m = 0; m < n; ++m) {
                    row[m * n + i] -= c[m][j][k];
                    row[m * n + j] -= c[i][m][k];
                }
                bool nonzero = false;
                for (const auto& v : row) nonzero = nonzero || v != 0;
                if (nonzero) rows.push_back(row);
            }
    return dense_nullity(rows, n * n);
}

// N^k as spanning vectors, built by multiplying out spanning sets.
inline std::vector<std::vector<Vec>> oracle_powers(const nilforge::NilAlgebra& a, std::size_t upto) {
    auto c = structure_tensor(a);
    std::size_t n = a.dim();
    std::vector<std::vector<Vec>> pw;
    std::vector<Vec> cur;
    for (std::size_t i = 0; i < n; ++i) cur.push_back(nilforge::unit_vec(n, i));
    pw.push_back(cur);
    for (std::size_t k = 2; k <= upto; ++k) {
        std::vector<Vec> next;
        for (const auto& x : pw.back())
            for (std::size_t i = 0; i < n; ++i) next.push_back(tensor_mul(c, x, nilforge::unit_vec(n, i)));
        pw.push_back(dense_basis(next));
    }
    return pw;
}

// dim {x : x·N^k = 0}, from the linear conditions x·v = 0 for v spanning N^k.
inline std::size_t oracle_socle_dim(const nilforge::NilAlgebra& a, const std::vector<Vec>& power_span) {
    auto c = structure_tensor(a);
    std::size_t n = a.dim();
    std::vector<Vec> rows;
    for (const auto& v : power_span)
        for (std::size_t k = 0; k < n; ++k) {
            Vec row(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) row[i] += v[j] * c[i][j][k];
            rows.push_back(row);
        }
    return dense_nullity(rows, n);
}

// ω(exp₁ x) evaluated numerically from the structure tensor.
inline Rational oracle_hypersurface_value(const nilforge::NilAlgebra& a, const nilforge::Pointing& p, const Vec& x) {
    auto c = structure_tensor(a);
    Vec acc = x, term = x;
    Rational fact = 1;
    for (unsigned k = 2; k <= a.dim() + 1; ++k) {
        term = tensor_mul(c, term, x);
        fact *= k;
        bool zero = true;
        for (const auto& t : term) zero = zero && t == 0;
        if (zero) break;
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += term[i] / fact;
    }
    return nilforge::dot(p.omega, acc);
}

// Each algebra fixture with the polynomial germ it comes from.
inline std::vector<std::string> small_algebra_names() { return {"dim9", "dim8", "dim11", "e6"}; }

inline std::vector<std::string> all_algebra_names() {
    return {"dim9", "dim8", "dim11", "dim17", "dim15a", "dim15b", "dim23", "dim20a", "dim20b", "e6"};
}

}  // namespace testing
