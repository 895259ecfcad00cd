#include "nilforge/grading.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilforge {

GradingCheck verify_grading(const NilAlgebra& a, const Grading& g) {
    GradingCheck r;
    std::size_t n = a.dim();
    if (g.basis.rows() != n || g.basis.cols() != n || g.weights.size() != n) return r;
    if (std::any_of(g.weights.begin(), g.weights.end(), [](unsigned w) { return w == 0; })) return r;
    Matrix pinv;
    try {
        pinv = inverse(g.basis);
    } catch (const std::domain_error&) {
        return r;
    }
    r.valid = true;
    for (std::size_t i = 0; i < n && r.valid; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Vec c = pinv.apply(a.mul(g.basis.col(i), g.basis.col(j)));
            bool ok = true;
            for (std::size_t k = 0; k < n; ++k)
                if (c[k] != 0 && g.weights[k] != g.weights[i] + g.weights[j]) ok = false;
            if (!ok) {
                r.valid = false;
                r.failing_pair = std::array<std::size_t, 2>{i, j};
                break;
            }
        }
    Matrix t = theta(g, 2);
    r.theta_automorphism = is_homomorphism(a, a, t) && determinant(t) != 0;
    return r;
}

namespace {

Matrix conjugate_diagonal(const Grading& g, const std::vector<Rational>& diag) {
    std::size_t n = g.weights.size();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = diag[i];
    return g.basis * d * inverse(g.basis);
}

}  // namespace

Matrix theta(const Grading& g, const Rational& t) {
    std::vector<Rational> diag;
    for (unsigned w : g.weights) {
        Rational p = 1;
        for (unsigned k = 0; k < w; ++k) p *= t;
        diag.push_back(p);
    }
    return conjugate_diagonal(g, diag);
}

Matrix euler_derivation(const Grading& g) {
    std::vector<Rational> diag;
    for (unsigned w : g.weights) diag.push_back(Rational(static_cast<long>(w)));
    return conjugate_diagonal(g, diag);
}

std::vector<Vec> weight_components(const Grading& g, const Vec& x, unsigned max_weight) {
    std::size_t n = g.weights.size();
    Vec c = inverse(g.basis).apply(x);
    std::vector<Vec> out(max_weight + 1, zero_vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i] == 0) continue;
        if (g.weights[i] > max_weight) throw std::out_of_range("weight beyond requested maximum");
        out[g.weights[i]] = out[g.weights[i]] + c[i] * g.basis.col(i);
    }
    return out;
}

PointedSplit pointed_split(const NilAlgebra& a, const Pointing& p) {
    check_pointing(a, p);
    PointedSplit s;
    s.skip = pointing_index(p);
    s.w_basis = kernel_basis(p);
    s.unit = unit_annihilator(a, p);
    std::size_t m = s.w_basis.size();
    Matrix pi = projection(a, p);
    s.h = Matrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s.h(i, j) = dot(p.omega, a.mul(s.w_basis[i], s.w_basis[j]));
    for (std::size_t i = 0; i < m; ++i) {
        Matrix op(m, m);
        for (std::size_t j = 0; j < m; ++j) {
            Vec xy = a.mul(s.w_basis[i], s.w_basis[j]);
            op.set_col(j, to_w(s, xy - pi.apply(xy)));
        }
        s.ops.push_back(std::move(op));
    }
    return s;
}

Vec to_w(const PointedSplit& s, const Vec& x) {
    Vec y;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (i != s.skip) y.push_back(x[i]);
    return y;
}

Vec from_w(const PointedSplit& s, const Vec& y) {
    Vec x = zero_vec(y.size() + 1);
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] != 0) x = x + y[i] * s.w_basis[i];
    return x;
}

AdaptedDecomposition adapted_decomposition(const std::vector<Matrix>& ops, const Matrix& h) {
    std::size_t m = h.rows();
    if (!h.square() || h != h.transpose()) throw std::domain_error("form is not symmetric");
    if (rank(h) != m) throw std::domain_error("form is degenerate");
    for (const auto& t : ops)
        if (t.transpose() * h != h * t) throw std::domain_error("operator is not selfadjoint for the form");

    std::vector<Vec> images, kernel_rows;
    for (const auto& t : ops)
        for (std::size_t c = 0; c < m; ++c) {
            images.push_back(t.col(c));
            kernel_rows.push_back(t.row(c));
        }
    Subspace b = Subspace::span(m, images);
    Subspace k = kernel_rows.empty() ? Subspace::whole(m) : kernel(Matrix::from_rows(kernel_rows));
    Subspace e3 = intersection(b, k);
    AdaptedDecomposition d;
    d.e3 = e3.basis();
    d.e2 = complement_basis(e3, b);
    d.e0 = complement_basis(e3, k);

    // E0^⊥ ∩ E2^⊥, then a complement of E3 inside it.
    std::vector<Vec> perp_rows;
    for (const auto& v : d.e0) perp_rows.push_back(h.apply(v));
    for (const auto& v : d.e2) perp_rows.push_back(h.apply(v));
    Subspace perp = perp_rows.empty() ? Subspace::whole(m) : kernel(Matrix::from_rows(perp_rows));
    std::vector<Vec> u = complement_basis(e3, perp);
    if (u.size() != d.e3.size()) throw std::logic_error("adapted decomposition dimension mismatch");

    // u'_i = u_i + Σ_j X_ij f_j with X = −½ G P^{-T} makes E1 isotropic.
    std::size_t r = u.size();
    if (r > 0) {
        Matrix g(r, r), p(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                g(i, j) = dot(u[i], h.apply(u[j]));
                p(i, j) = dot(u[i], h.apply(d.e3[j]));
            }
        Matrix x = Rational(-1, 2) * (g * inverse(p.transpose()));
        for (std::size_t i = 0; i < r; ++i) {
            Vec v = u[i];
            for (std::size_t j = 0; j < r; ++j)
                if (x(i, j) != 0) v = v + x(i, j) * d.e3[j];
            d.e1.push_back(std::move(v));
        }
    }
    return d;
}

Grading grading_index3(const NilAlgebra& a) {
    auto rep = verify_algebra(a);
    if (!rep.associative || !rep.nilpotent || !rep.admissible) throw std::domain_error("algebra is not admissible");
    if (rep.nil_index > 3) throw std::domain_error("nil-index exceeds 3");
    Pointing p = default_pointing(a);
    PointedSplit s = pointed_split(a, p);
    AdaptedDecomposition d = adapted_decomposition(s.ops, s.h);
    if (!d.e2.empty()) throw std::logic_error("nonzero W2 block for nil-index at most 3");
    Grading g;
    std::vector<Vec> cols;
    auto add = [&](const std::vector<Vec>& block, unsigned w) {
        for (const auto& v : block) {
            cols.push_back(from_w(s, v));
            g.weights.push_back(w);
        }
    };
    add(d.e1, 2);
    add(d.e0, 3);
    add(d.e3, 4);
    cols.push_back(s.unit);
    g.weights.push_back(6);
    g.basis = Matrix::from_columns(cols, a.dim());
    return g;
}

Pointing graded_pointing(const NilAlgebra& a, const Grading& g) {
    unsigned top = *std::max_element(g.weights.begin(), g.weights.end());
    Vec gen = annihilator_generator(a);
    Vec c = inverse(g.basis).apply(gen);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0 && g.weights[i] != top) throw std::domain_error("annihilator is not in the top weight block");
    // ω vanishes on every block below the top one and is 1 on the annihilator.
    Matrix pinv = inverse(g.basis);
    Vec omega = zero_vec(a.dim());
    Rational scale = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (g.weights[i] == top) scale += c[i] * c[i];
    for (std::size_t i = 0; i < c.size(); ++i)
        if (g.weights[i] == top && c[i] != 0)
            for (std::size_t j = 0; j < a.dim(); ++j) omega[j] += (c[i] / scale) * pinv(i, j);
    return Pointing{omega};
}

}  // namespace nilforge
