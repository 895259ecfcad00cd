#include "nilforge/milnor.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>

namespace nilforge {

namespace {

void monomials_of_degree(std::size_t nvars, unsigned deg, std::vector<Monomial>& out) {
    Monomial m(nvars, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == nvars) {
            m[i] = left;
            out.push_back(m);
            return;
        }
        for (unsigned e = left + 1; e-- > 0;) {
            m[i] = e;
            rec(i + 1, left - e);
        }
    };
    if (nvars == 0) return;
    rec(0, deg);
}

std::string monomial_label(const Monomial& m, const VarList& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += '*';
        std::string v = vars[i];
        std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
        s += v;
        if (m[i] > 1) s += '^' + std::to_string(m[i]);
    }
    return s;
}

struct Truncated {
    std::vector<Monomial> columns;
    std::map<Monomial, std::size_t> index;
};

Truncated truncated_space(std::size_t nvars, unsigned d) {
    Truncated t;
    for (unsigned k = 1; k <= d; ++k) monomials_of_degree(nvars, k, t.columns);
    for (std::size_t i = 0; i < t.columns.size(); ++i) t.index.emplace(t.columns[i], i);
    return t;
}

SparseRow as_row(const MPoly& p, const Truncated& t, unsigned d) {
    SparseRow row;
    for (const auto& [m, c] : p.terms()) {
        if (total_degree(m) > d) continue;
        auto it = t.index.find(m);
        if (it == t.index.end()) throw std::domain_error("polynomial has a constant term");
        row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return row;
}

}  // namespace

MilnorResult milnor_algebra(const MPoly& f, const MilnorOptions& options) {
    if (f.is_zero() || f.low_degree() < 2) throw std::domain_error("germ must lie in the square of the maximal ideal");
    std::size_t nv = f.nvars();
    for (std::size_t i = 0; i < nv; ++i)
        if (f.derivative(i).is_zero()) throw std::domain_error("variable '" + f.vars()[i] + "' does not occur");
    std::vector<MPoly> partials;
    for (std::size_t i = 0; i < nv; ++i) partials.push_back(f.derivative(i));

    unsigned start = options.start.value_or(2 * static_cast<unsigned>(f.degree()));
    for (unsigned d = start; d <= options.trunc_max; ++d) {
        Truncated space = truncated_space(nv, d);
        RowEchelon ech(space.columns.size());
        for (const auto& g : partials) {
            int low = g.low_degree();
            for (unsigned k = 0; static_cast<int>(k) + low <= static_cast<int>(d); ++k) {
                std::vector<Monomial> mons;
                if (k == 0)
                    mons.push_back(Monomial(nv, 0));
                else
                    monomials_of_degree(nv, k, mons);
                for (const auto& m : mons) ech.insert(as_row(g.shift(m), space, d));
            }
        }
        bool certified = true;
        for (std::size_t c = 0; c < space.columns.size(); ++c)
            if (total_degree(space.columns[c]) == d && !ech.is_pivot(c)) {
                certified = false;
                break;
            }
        if (!certified) continue;

        MilnorResult res;
        res.vars = f.vars();
        res.truncation = d;
        std::vector<std::size_t> basis_cols;
        std::map<std::size_t, std::size_t> position;
        for (std::size_t c = 0; c < space.columns.size(); ++c)
            if (!ech.is_pivot(c)) {
                position[c] = basis_cols.size();
                basis_cols.push_back(c);
                res.monomial_basis.push_back(space.columns[c]);
            }
        std::size_t n = basis_cols.size();
        auto normal_form = [&](const SparseRow& row) {
            Vec v = zero_vec(n);
            for (const auto& [c, x] : ech.reduce(row)) v[position.at(c)] = x;
            return v;
        };
        std::vector<std::string> labels;
        for (const auto& m : res.monomial_basis) labels.push_back(monomial_label(m, res.vars));
        res.algebra = NilAlgebra(labels);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Monomial m = res.monomial_basis[i];
                for (std::size_t k = 0; k < nv; ++k) m[k] += res.monomial_basis[j][k];
                if (total_degree(m) >= d) continue;
                res.algebra.set_product(i, j, normal_form({{space.index.at(m), Rational(1)}}));
            }
        res.residue = normal_form(as_row(f, space, d));
        res.in_jacobi = is_zero(res.residue);
        res.report = verify_algebra(res.algebra);
        return res;
    }
    throw std::domain_error("Milnor number not finite up to truncation bound " + std::to_string(options.trunc_max));
}

}  // namespace nilforge
