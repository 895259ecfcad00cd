#include "nilforge/nilpoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nilforge {

namespace {

MPoly apply_omega(const Vec& omega, const PolyVec& x, const MPoly& ctx) {
    MPoly r(ctx.context());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (omega[i] != 0) r += omega[i] * x[i];
    return r;
}

bool all_zero(const PolyVec& v) {
    return std::all_of(v.begin(), v.end(), [](const MPoly& p) { return p.is_zero(); });
}

// Σ_{k≥2} ω(X^k)/k! with X = Σ x_i w_i.
MPoly nil_series(const NilAlgebra& a, const Vec& omega, const std::vector<Vec>& wb, const VarList& vars) {
    MPoly ctx(vars);
    PolyVec x = wb.empty() ? PolyVec(a.dim(), ctx) : linear_element(wb, vars);
    MPoly sum(ctx.context());
    PolyVec term = x;
    for (unsigned k = 2;; ++k) {
        term = a.mul(term, x);
        if (all_zero(term)) break;
        sum += (1 / factorial(k)) * apply_omega(omega, term, ctx);
        if (k > a.dim() + 1) throw std::domain_error("algebra is not nilpotent");
    }
    return sum;
}

// Third partial derivatives T[i][j][k] of a cubic.
std::vector<std::vector<Vec>> cubic_tensor(const MPoly& c, std::size_t m) {
    std::vector<std::vector<Vec>> t(m, std::vector<Vec>(m, zero_vec(m)));
    if (c.is_zero()) return t;
    for (std::size_t i = 0; i < m; ++i) {
        MPoly di = c.derivative(i);
        for (std::size_t j = i; j < m; ++j) {
            MPoly dij = di.derivative(j);
            for (std::size_t k = 0; k < m; ++k) {
                Monomial e(m, 0);
                e[k] = 1;
                t[i][j][k] = t[j][i][k] = dij.coeff(e);
            }
        }
    }
    return t;
}

MPoly in_context(const MPoly& p, const MPoly& ctx) {
    if (same_context(p, ctx)) return p;
    if (p.nvars() != ctx.nvars() && !p.is_constant())
        throw std::invalid_argument("polynomials have different numbers of variables");
    MPoly r(ctx.context());
    for (const auto& [m, c] : p.terms()) r.add_term(m.empty() ? Monomial(ctx.nvars(), 0) : m, c);
    return r;
}

}  // namespace

VarList standard_vars(std::size_t m, const std::string& stem) {
    VarList v;
    for (std::size_t i = 0; i < m; ++i) v.push_back(stem + std::to_string(i + 1));
    return v;
}

Matrix gram_matrix(const MPoly& p) {
    std::size_t m = p.nvars();
    Matrix g(m, m);
    for (const auto& [mono, c] : p.terms()) {
        if (total_degree(mono) != 2) continue;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i)
            for (unsigned e = 0; e < mono[i]; ++e) idx.push_back(i);
        if (idx[0] == idx[1]) {
            g(idx[0], idx[0]) = 2 * c;
        } else {
            g(idx[0], idx[1]) = c;
            g(idx[1], idx[0]) = c;
        }
    }
    return g;
}

void check_nil_polynomial(const MPoly& p) {
    if (p.low_degree() >= 0 && p.low_degree() < 2)
        throw std::domain_error("nil-polynomial has a constant or linear term");
    if (determinant(gram_matrix(p)) == 0) throw std::domain_error("quadratic part is degenerate");
}

NilPolynomial nil_polynomial(const NilAlgebra& a, std::optional<Pointing> pointing) {
    Pointing pt = pointing ? *pointing : default_pointing(a);
    check_pointing(a, pt);
    NilPolynomial out;
    out.w_basis = kernel_basis(pt);
    out.p = nil_series(a, pt.omega, out.w_basis, standard_vars(a.dim() - 1));
    out.pointing = pt;
    return out;
}

NilPolynomial nil_polynomial(const NilAlgebra& a, const Pointing& pointing, const std::vector<Vec>& w_basis,
                             const VarList& vars) {
    check_pointing(a, pointing);
    if (w_basis.size() + 1 != a.dim() || vars.size() != w_basis.size())
        throw std::invalid_argument("kernel basis must have dim − 1 vectors, one name each");
    for (const auto& v : w_basis)
        if (dot(pointing.omega, v) != 0) throw std::domain_error("basis vector outside the kernel of the pointing");
    if (rank(Matrix::from_columns(w_basis, a.dim())) != w_basis.size())
        throw std::domain_error("kernel basis is linearly dependent");
    NilPolynomial out;
    out.w_basis = w_basis;
    out.p = nil_series(a, pointing.omega, w_basis, vars);
    out.pointing = pointing;
    return out;
}

Pointing shift_pointing(const NilAlgebra& a, const Pointing& p, const Vec& s) {
    check_pointing(a, p);
    Vec es = exp1(a, s);
    if (dot(p.omega, es) != 0) throw std::domain_error("shift does not lie on the hypersurface");
    Pointing r{zero_vec(a.dim())};
    for (std::size_t j = 0; j < a.dim(); ++j) {
        Vec ej = unit_vec(a.dim(), j);
        r.omega[j] = dot(p.omega, ej + a.mul(es, ej));
    }
    return r;
}

bool shift_duality_holds(const NilAlgebra& a, const Pointing& p, const Pointing& rho, const Vec& s) {
    VarList vars = standard_vars(a.dim(), "t");
    MPoly f_rho = hypersurface_function(a, rho, vars);
    MPoly f_pi = hypersurface_function(a, p, vars);
    std::vector<MPoly> shifted;
    for (std::size_t i = 0; i < a.dim(); ++i)
        shifted.push_back(MPoly::variable(vars, i) + MPoly::constant(f_pi, s[i]));
    return f_rho == f_pi.compose(shifted);
}

Vec group_law(const NilAlgebra& a, const Vec& s, const Vec& t) {
    Vec es = exp1(a, s), et = exp1(a, t);
    return log1(a, es + et + a.mul(es, et));
}

Reconstruction reconstruct_algebra(const MPoly& q, const MPoly& c) {
    std::size_t m = q.nvars();
    MPoly cc = in_context(c, q);
    if (!q.is_zero() && (!q.is_homogeneous() || q.degree() != 2))
        throw std::invalid_argument("quadratic part must be homogeneous of degree 2");
    if (!cc.is_zero() && (!cc.is_homogeneous() || cc.degree() != 3))
        throw std::invalid_argument("cubic part must be homogeneous of degree 3");
    Matrix g = gram_matrix(q);
    if (determinant(g) == 0) throw std::domain_error("quadratic part is degenerate");
    Matrix ginv = inverse(g);
    auto t = cubic_tensor(cc, m);

    std::vector<std::string> labels(q.vars());
    std::string ann = "s";
    while (std::find(labels.begin(), labels.end(), ann) != labels.end()) ann += "'";
    labels.push_back(ann);
    Reconstruction r;
    r.algebra = NilAlgebra(labels);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            Vec w = ginv.apply(t[i][j]);
            w.push_back(g(i, j));
            r.algebra.set_product(i, j, w);
        }
    r.report = verify_algebra(r.algebra);
    r.failing_triple = r.report.failing_triple;
    r.accepted = r.report.associative && r.report.nilpotent;
    return r;
}

MPoly regenerate_from_2_3(const MPoly& q, const MPoly& c) {
    Reconstruction r = reconstruct_algebra(q, c);
    if (!r.accepted) throw std::domain_error("cubic and quadratic parts do not define an associative algebra");
    std::size_t m = q.nvars();
    std::vector<Vec> wb;
    for (std::size_t i = 0; i < m; ++i) wb.push_back(unit_vec(m + 1, i));
    return nil_series(r.algebra, unit_vec(m + 1, m), wb, q.vars());
}

bool reconstruction_isomorphism_holds(const NilAlgebra& source, const NilPolynomial& np) {
    if (!np.pointing || np.w_basis.size() + 1 != source.dim()) return false;
    Reconstruction r = reconstruct_algebra(np.p.homogeneous_part(2), np.p.homogeneous_part(3));
    if (!r.accepted) return false;
    std::vector<Vec> cols = np.w_basis;
    cols.push_back(unit_annihilator(source, *np.pointing));
    Matrix m = Matrix::from_columns(cols, source.dim());
    return determinant(m) != 0 && is_homomorphism(r.algebra, source, m);
}

FamilyResult family_degree3(const MPoly& c) {
    std::size_t m = c.nvars();
    if (!c.is_zero() && (!c.is_homogeneous() || c.degree() != 3))
        throw std::invalid_argument("family input must be a homogeneous cubic");
    VarList vars = c.vars();
    std::string stem = "y";
    auto clash = [&](const std::string& s) {
        for (std::size_t k = 0; k < m; ++k)
            if (std::find(vars.begin(), vars.end(), s + std::to_string(k + 1)) != vars.end()) return true;
        return false;
    };
    while (clash(stem)) stem += "y";
    for (std::size_t k = 0; k < m; ++k) vars.push_back(stem + std::to_string(k + 1));

    MPoly ctx(vars);
    MPoly q(ctx.context());
    for (std::size_t k = 0; k < m; ++k) q += MPoly::variable(ctx, k) * MPoly::variable(ctx, m + k);
    MPoly ce = c.is_zero() ? MPoly(ctx.context()) : c.embed(ctx.context());

    FamilyResult out;
    out.reconstruction = reconstruct_algebra(q, ce);
    out.poly.p = q + ce;
    out.poly.pointing = Pointing{unit_vec(2 * m + 1, 2 * m)};
    for (std::size_t i = 0; i < 2 * m; ++i) out.poly.w_basis.push_back(unit_vec(2 * m + 1, i));
    out.reduced = leading_radical(c).dim() == 0;
    if (out.reconstruction.accepted) {
        Grading g{Matrix::identity(2 * m + 1), {}};
        for (std::size_t i = 0; i < m; ++i) g.weights.push_back(1);
        for (std::size_t i = 0; i < m; ++i) g.weights.push_back(2);
        g.weights.push_back(3);
        if (verify_grading(out.reconstruction.algebra, g).valid) out.grading = g;
    }
    return out;
}

QuarticInvariants binary_quartic_invariants(const MPoly& d) {
    if (d.nvars() != 2 || (!d.is_zero() && (!d.is_homogeneous() || d.degree() != 4)))
        throw std::invalid_argument("expected a binary quartic form");
    Rational a0 = d.coeff({4, 0}), a1 = d.coeff({3, 1}) / 4, a2 = d.coeff({2, 2}) / 6;
    Rational a3 = d.coeff({1, 3}) / 4, a4 = d.coeff({0, 4});
    QuarticInvariants r;
    r.g2 = a0 * a4 - 4 * a1 * a3 + 3 * a2 * a2;
    r.g3 = determinant(Matrix::from_rows({{a0, a1, a2}, {a1, a2, a3}, {a2, a3, a4}}));
    if (r.g3 != 0) r.phi = r.g2 * r.g2 * r.g2 / (r.g3 * r.g3);
    return r;
}

bool theta_symmetric(const MPoly& c, std::size_t n, std::size_t m, const std::vector<Rational>& eps) {
    if (eps.size() != m || n + m > c.nvars()) throw std::invalid_argument("theta block sizes do not fit");
    auto t = cubic_tensor(c, c.nvars());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) {
                    Rational a, b;
                    for (std::size_t k = 0; k < m; ++k) {
                        a += t[i][j][n + k] * t[r][s][n + k] / eps[k];
                        b += t[r][j][n + k] * t[i][s][n + k] / eps[k];
                    }
                    if (a != b) return false;
                }
    return true;
}

Degree4Family family_degree4(const Rational& t, const Rational& eps) {
    if (eps == 0) throw std::invalid_argument("epsilon must be nonzero");
    VarList vars{"x1", "x2", "y1", "y2", "y3", "z1", "z2"};
    auto v = [&](std::size_t i) { return MPoly::variable(vars, i); };
    MPoly x1 = v(0), x2 = v(1), y1 = v(2), y2 = v(3), y3 = v(4), z1 = v(5), z2 = v(6);
    Rational half(1, 2);
    Degree4Family f;
    f.q = x1 * z1 + x2 * z2 + half * y1 * y1 + half * y2 * y2 + (eps / 2) * y3 * y3;
    f.c = half * (x1 * x1 + x2 * x2) * y1 + x1 * x2 * y2 + (t / 2) * x2 * x2 * y3;
    f.d = Rational(1, 24) * x1.pow(4) + Rational(1, 4) * x1 * x1 * x2 * x2 +
          ((1 + t * t / eps) / 24) * x2.pow(4);
    f.p = f.q + f.c + f.d;
    f.theta_symmetric = theta_symmetric(f.c, 2, 3, {1, 1, eps});
    f.reconstruction = reconstruct_algebra(f.q, f.c);
    f.regenerated_matches = f.reconstruction.accepted && regenerate_from_2_3(f.q, f.c) == f.p;
    Matrix pick(7, 2);
    pick(0, 0) = 1;
    pick(1, 1) = 1;
    f.invariants = binary_quartic_invariants(f.d.substitute_linear(pick, VarList{"x1", "x2"}));
    if (t != 0) {
        Rational u = t * t / eps;
        f.phi_closed_form = (4 + u) * (4 + u) * (4 + u) / (u * u);
    }
    f.grading = Grading{Matrix::identity(8), {1, 1, 2, 2, 2, 3, 3, 4}};
    return f;
}

MPoly apply_witness(const MPoly& p, const EquivalenceWitness& w) {
    if (w.alpha.rows() != p.nvars() || w.alpha.cols() != p.nvars())
        throw std::invalid_argument("witness size does not match the polynomial");
    return w.epsilon * p.substitute_linear(inverse(w.alpha));
}

bool equivalence_witness_check(const MPoly& p, const MPoly& p_tilde, const EquivalenceWitness& w) {
    if (p_tilde.nvars() != p.nvars()) return false;
    return apply_witness(p, w) == in_context(p_tilde, p);
}

MPoly hesse_family(const Rational& t) {
    VarList vars = standard_vars(6);
    auto v = [&](std::size_t i) { return MPoly::variable(vars, i); };
    return t * (v(0).pow(3) + v(1).pow(3) + v(2).pow(3)) - Rational(18) * v(0) * v(1) * v(2) +
           v(0) * v(3) + v(1) * v(4) + v(2) * v(5);
}

EquivalenceWitness hesse_family_witness(const Rational& t) {
    if (t == 0) throw std::domain_error("parameter must be nonzero");
    EquivalenceWitness w{Matrix::identity(6), 1 / t};
    for (std::size_t i = 3; i < 6; ++i) w.alpha(i, i) = 1 / t;
    return w;
}

Subspace leading_radical(const MPoly& top) {
    std::size_t n = top.nvars();
    std::map<Monomial, SparseRow, GrlexLess> rows;
    for (std::size_t i = 0; i < n; ++i) {
        MPoly di = top.derivative(i);
        for (const auto& [m, c] : di.terms()) rows[m].emplace_back(i, c);
    }
    SparseMatrix sys(n);
    for (auto& [m, r] : rows) sys.add_row(r);
    return Subspace::span(n, rref_solve(sys).kernel_basis);
}

FactorProfile binary_factor_profile(const MPoly& form) {
    if (form.nvars() != 2 || form.is_zero() || !form.is_homogeneous())
        throw std::invalid_argument("expected a nonzero binary form");
    unsigned d = static_cast<unsigned>(form.degree());
    UPoly f(d + 1);
    for (unsigned i = 0; i <= d; ++i) f[i] = form.coeff({i, d - i});
    f = upoly_trim(f);
    FactorProfile out;
    std::size_t e = f.size() - 1;
    if (e < d) out.linear.push_back({0, 1, d - e});
    auto parts = upoly_squarefree(f);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        UPoly g = parts[k];
        std::size_t mult = k + 1;
        for (const auto& [root, unused] : upoly_rational_roots(g)) {
            (void)unused;
            out.linear.push_back({1, -root, mult});
            g = upoly_divmod(g, UPoly{-root, 1}).first;
        }
        if (g.size() == 3) {
            Rational disc = g[1] * g[1] - 4 * g[2] * g[0];
            out.quadratic.push_back({{g[2], g[1], g[0]}, mult, disc > 0 ? 1 : (disc < 0 ? -1 : 0)});
        } else if (g.size() > 3) {
            out.other.emplace_back(g.size() - 1, mult);
        }
    }
    return out;
}

std::string FactorProfile::signature() const {
    std::vector<std::pair<std::size_t, std::string>> parts;
    for (const auto& l : linear) parts.emplace_back(l.multiplicity, "L" + std::to_string(l.multiplicity));
    for (const auto& q : quadratic)
        parts.emplace_back(q.multiplicity, "Q" + std::to_string(q.multiplicity) +
                                               (q.discriminant_sign < 0 ? "-" : "+"));
    for (const auto& [deg, mult] : other)
        parts.emplace_back(mult, "D" + std::to_string(deg) + "^" + std::to_string(mult));
    std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::string s;
    for (const auto& [m, t] : parts) s += (s.empty() ? "" : " ") + t;
    return s;
}

LeadingFormAnalysis leading_form_analysis(const MPoly& p) {
    LeadingFormAnalysis r;
    r.degree = p.degree();
    r.leading = p.homogeneous_part(r.degree);
    Subspace rad = leading_radical(r.leading);
    r.essential_variables = p.nvars() - rad.dim();
    if (r.essential_variables == 2) {
        auto comp = complement_basis(rad, Subspace::whole(p.nvars()));
        Matrix m = Matrix::from_columns(comp, p.nvars());
        r.binary_form = r.leading.substitute_linear(m, VarList{"x", "y"});
        r.profile = binary_factor_profile(*r.binary_form);
    }
    return r;
}

}  // namespace nilforge
