#include "nilforge/homogeneity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "nilforge/parallel.hpp"

namespace nilforge {

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    return {outer.linear * inner.linear, outer.linear.apply(inner.translation) + outer.translation};
}

AffineMap inverse(const AffineMap& g) {
    Matrix li = nilforge::inverse(g.linear);
    return {li, Rational(-1) * li.apply(g.translation)};
}

std::string to_string(HomogeneityVerdict v) {
    return v == HomogeneityVerdict::AH ? "AH" : "locally_non_homogeneous";
}

std::string to_string(GradingVerdict v) {
    switch (v) {
        case GradingVerdict::not_gradable: return "not_gradable";
        case GradingVerdict::gradable_with_witness: return "gradable_with_witness";
        default: return "inconclusive";
    }
}

namespace {

// Rows of a linear system keyed by (equation block, monomial).
class RowCollector {
public:
    void add(std::size_t block, const MPoly& poly, std::size_t col, const Rational& scale = Rational(1)) {
        for (const auto& [m, c] : poly.terms()) rows_[{block, m}].emplace_back(col, scale * c);
    }
    std::size_t size() const { return rows_.size(); }
    void feed(RowEchelon& e) {
        for (auto& [key, row] : rows_) {
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            e.insert(row);
        }
    }

private:
    struct KeyLess {
        bool operator()(const std::pair<std::size_t, Monomial>& a, const std::pair<std::size_t, Monomial>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return GrlexLess{}(a.second, b.second);
        }
    };
    std::map<std::pair<std::size_t, Monomial>, SparseRow, KeyLess> rows_;
};

std::vector<MPoly> common_context(const std::vector<MPoly>& ps) {
    if (ps.empty()) throw std::invalid_argument("no polynomials given");
    std::vector<MPoly> out;
    std::shared_ptr<const VarList> ctx;
    for (const auto& p : ps)
        if (!p.is_constant()) {
            ctx = p.context();
            break;
        }
    if (!ctx) ctx = ps[0].context();
    for (const auto& p : ps) out.push_back(p.is_constant() || same_context(p, MPoly(ctx)) ? p : p.embed(ctx));
    for (auto& p : out)
        if (p.nvars() != ctx->size()) {
            MPoly q(ctx);
            if (!p.is_zero()) q += MPoly::constant(q, p.coeff(Monomial(p.nvars(), 0)));
            p = q;
        }
    return out;
}

std::string fresh_name(const VarList& vars, std::string stem) {
    while (std::find(vars.begin(), vars.end(), stem) != vars.end()) stem += "'";
    return stem;
}

Matrix exp_nilpotent(const Matrix& m) {
    std::size_t n = m.rows();
    Matrix sum = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (unsigned k = 1;; ++k) {
        term = (Rational(1) / k) * (term * m);
        if (term.is_zero()) break;
        sum = sum + term;
        if (k > n + 1) throw std::domain_error("operator is not nilpotent");
    }
    return sum;
}

}  // namespace

HomogeneityReport homogeneity_report(const std::vector<MPoly>& input, const HomogeneityOptions& opts) {
    std::vector<MPoly> ps = common_context(input);
    const MPoly& ctx = ps[0];
    std::size_t r = ctx.nvars(), s = ps.size(), n = r + s;
    std::size_t ncols = n * n + r;

    std::vector<MPoly> coord;  // x_1..x_r, p_1..p_s
    for (std::size_t k = 0; k < r; ++k) coord.push_back(MPoly::variable(ctx, k));
    for (const auto& p : ps) coord.push_back(p);

    // Per (j, m): the polynomials multiplying a_jk, computed in parallel.
    struct Block {
        std::vector<MPoly> polys;  // index k
        MPoly dp;
    };
    std::vector<Block> blocks(r * s);
    parallel_for(r * s, [&](std::size_t idx) {
        std::size_t j = idx / s, m = idx % s;
        Block b;
        b.dp = ps[m].derivative(j);
        if (!b.dp.is_zero())
            for (std::size_t k = 0; k < n; ++k) b.polys.push_back(coord[k] * b.dp);
        blocks[idx] = std::move(b);
    });

    RowCollector rows;
    for (std::size_t m = 0; m < s; ++m) {
        std::size_t jm = r + m;
        for (std::size_t k = 0; k < n; ++k) rows.add(m, coord[k], jm * n + k);
        for (std::size_t j = 0; j < r; ++j) {
            const Block& b = blocks[j * s + m];
            if (b.dp.is_zero()) continue;
            for (std::size_t k = 0; k < n; ++k) rows.add(m, b.polys[k], j * n + k, Rational(-1));
            rows.add(m, b.dp, n * n + j, Rational(-1));
        }
    }
    blocks.clear();

    HomogeneityReport rep;
    rep.r = r;
    rep.s = s;
    rep.unknowns = ncols;
    rep.equations = rows.size();
    RowEchelon e(ncols);
    rows.feed(e);
    rep.aff_solutions = e.kernel_basis(ncols);
    rep.aff_dim = rep.aff_solutions.size();

    std::vector<Vec> proj;
    for (const auto& v : rep.aff_solutions) proj.emplace_back(v.begin() + static_cast<long>(n * n), v.end());
    Subspace orbit = Subspace::span(r, proj);
    rep.orbit_dim = orbit.dim();
    for (std::size_t l = 0; l < r; ++l) {
        rep.per_ell.push_back(orbit.contains(unit_vec(r, l)));
        if (opts.on_verdict) opts.on_verdict(l + 1, rep.per_ell.back());
    }
    bool all = std::all_of(rep.per_ell.begin(), rep.per_ell.end(), [](bool b) { return b; });
    rep.verdict = all ? HomogeneityVerdict::AH : HomogeneityVerdict::locally_non_homogeneous;
    if (opts.cross_check && s == 1) {
        rep.cross_check_per_ell = graph_field_verdicts(ps[0]);
        rep.cross_check = rep.cross_check_per_ell == rep.per_ell;
    }
    return rep;
}

HomogeneityReport homogeneity_report(const NilPolynomial& p, const HomogeneityOptions& opts) {
    return homogeneity_report(std::vector<MPoly>{p.p}, opts);
}

std::vector<bool> graph_field_verdicts(const MPoly& p) {
    std::size_t r = p.nvars(), n = r + 1;
    VarList vars = p.vars();
    vars.push_back(fresh_name(vars, "x" + std::to_string(n)));
    MPoly ctx(vars);
    MPoly pe = p.is_zero() ? MPoly(ctx.context()) : p.embed(ctx.context());
    MPoly xn = MPoly::variable(ctx, r);
    MPoly f = pe - xn;
    std::vector<MPoly> df;
    for (std::size_t j = 0; j < n; ++j) df.push_back(f.derivative(j));

    std::size_t rho = n * n, rhs0 = n * n + 1;
    std::vector<std::vector<MPoly>> polys(n);
    parallel_for(n, [&](std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) polys[j].push_back(MPoly::variable(ctx, k) * df[j]);
    });
    RowCollector rows;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) rows.add(0, polys[j][k], j * n + k);
    rows.add(0, f, rho, Rational(-1));
    for (std::size_t l = 0; l < r; ++l) rows.add(0, df[l], rhs0 + l, Rational(-1));
    RowEchelon e(rhs0 + r);
    rows.feed(e);
    std::vector<bool> out;
    for (std::size_t l = 0; l < r; ++l) out.push_back(e.consistent(rhs0, rhs0 + l));
    return out;
}

std::vector<AffineMap> aff_lie_algebra(const MPoly& p, const HomogeneityReport* report) {
    HomogeneityReport local;
    if (!report) {
        HomogeneityOptions o;
        o.cross_check = false;
        local = homogeneity_report(std::vector<MPoly>{p}, o);
        report = &local;
    }
    std::size_t r = p.nvars(), n = r + 1;
    std::vector<AffineMap> out;
    for (const auto& v : report->aff_solutions) {
        AffineMap a{Matrix(n, n), zero_vec(n)};
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) a.linear(j, k) = v[j * n + k];
        for (std::size_t j = 0; j < r; ++j) a.translation[j] = v[n * n + j];
        out.push_back(std::move(a));
    }
    return out;
}

bool graph_tangent(const MPoly& p, const AffineMap& field) {
    std::size_t r = p.nvars(), n = r + 1;
    if (field.linear.rows() != n || field.linear.cols() != n) throw std::invalid_argument("field size mismatch");
    auto component = [&](std::size_t j) {
        MPoly a = MPoly::constant(p, field.translation[j]);
        for (std::size_t k = 0; k < r; ++k)
            if (field.linear(j, k) != 0) a += field.linear(j, k) * MPoly::variable(p, k);
        if (field.linear(j, r) != 0) a += field.linear(j, r) * p;
        return a;
    };
    MPoly expr = -component(r);
    for (std::size_t j = 0; j < r; ++j) expr += component(j) * p.derivative(j);
    return expr.is_zero();
}

Vec euler_solution(const std::vector<Rational>& weights, const Rational& degree) {
    if (degree == 0) throw std::invalid_argument("weighted degree must be nonzero");
    std::size_t r = weights.size(), n = r + 1;
    Vec v = zero_vec(n * n + r);
    for (std::size_t j = 0; j < r; ++j) v[j * n + j] = weights[j] / degree;
    v[r * n + r] = 1;
    return v;
}

bool solves_altered_system(const MPoly& p, const Vec& solution) {
    HomogeneityReport rep;
    rep.aff_solutions = {solution};
    return graph_tangent(p, aff_lie_algebra(p, &rep)[0]);
}

namespace {

Matrix matrix_poly(const UPoly& f, const Matrix& a) {
    std::size_t n = a.rows();
    Matrix r(n, n);
    for (std::size_t k = f.size(); k-- > 0;) r = r * a + f[k] * Matrix::identity(n);
    return r;
}

// Semisimple part of a by Newton iteration on the squarefree part of its
// characteristic polynomial; exact and finite since a − S is nilpotent.
Matrix semisimple_part(const Matrix& a) {
    UPoly chi = char_poly(a);
    UPoly sq = upoly_divmod(chi, upoly_gcd(chi, upoly_derivative(chi))).first;
    UPoly dsq = upoly_derivative(sq);
    Matrix s = a;
    for (std::size_t it = 0; it <= a.rows() + 1; ++it) {
        Matrix ps = matrix_poly(sq, s);
        if (ps.is_zero()) return s;
        s = s - ps * nilforge::inverse(matrix_poly(dsq, s));
    }
    throw std::logic_error("semisimple part iteration did not terminate");
}

Integer lcm_den(const std::vector<Rational>& xs) {
    Integer l = 1;
    for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

std::optional<Grading> grading_from_field(const Matrix& a, const NilAlgebra& recon, std::vector<Rational>* eig) {
    Spectrum sp = rational_spectrum(a);
    if (!sp.splits || !sp.diagonalizable) return std::nullopt;
    std::vector<Rational> vals;
    for (const auto& ev : sp.eigenvalues) {
        if (ev.value <= 0) return std::nullopt;
        for (std::size_t i = 0; i < ev.algebraic; ++i) vals.push_back(ev.value);
    }
    std::vector<Rational> dual;
    for (const auto& v : vals) dual.push_back(1 - v);
    std::sort(vals.begin(), vals.end());
    std::sort(dual.begin(), dual.end());
    if (vals != dual) return std::nullopt;
    Integer l = lcm_den(vals);
    std::size_t m = a.rows();
    std::vector<Vec> cols;
    Grading g;
    for (const auto& ev : sp.eigenvalues) {
        Subspace eigsp = kernel(a - ev.value * Matrix::identity(m));
        Rational w = ev.value * l;
        if (w.get_den() != 1 || w <= 0) return std::nullopt;
        for (const auto& v : eigsp.basis()) {
            Vec c = v;
            c.push_back(0);
            cols.push_back(c);
            g.weights.push_back(static_cast<unsigned>(w.get_num().get_ui()));
        }
    }
    cols.push_back(unit_vec(m + 1, m));
    g.weights.push_back(static_cast<unsigned>(l.get_ui()));
    g.basis = Matrix::from_columns(cols, m + 1);
    if (!verify_grading(recon, g).valid) return std::nullopt;
    if (eig) *eig = vals;
    return g;
}

}  // namespace

GradingReport grading_necessary_test(const MPoly& p, const std::optional<Grading>& witness) {
    std::size_t m = p.nvars();
    std::size_t rhs = m * m;
    RowCollector rows;
    std::vector<MPoly> dp;
    for (std::size_t j = 0; j < m; ++j) dp.push_back(p.derivative(j));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) rows.add(0, MPoly::variable(p, k) * dp[j], j * m + k);
    rows.add(0, p, rhs);
    RowEchelon e(rhs + 1);
    rows.feed(e);

    GradingReport rep;
    auto part = e.particular(rhs, rhs);
    rep.system_solvable = part.has_value();
    if (!rep.system_solvable) {
        rep.verdict = GradingVerdict::not_gradable;
        return rep;
    }
    auto kern = e.kernel_basis(rhs);
    rep.solution_space_dim = kern.size();
    Reconstruction recon = reconstruct_algebra(p.homogeneous_part(2), p.homogeneous_part(3));
    if (!recon.accepted) return rep;
    if (witness && verify_grading(recon.algebra, *witness).valid) {
        rep.witness = witness;
        rep.verdict = GradingVerdict::gradable_with_witness;
        return rep;
    }

    auto as_matrix = [&](const Vec& v) {
        Matrix a(m, m);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) a(j, k) = v[j * m + k];
        return a;
    };
    Matrix a0 = as_matrix(*part);
    std::vector<Matrix> candidates{a0};
    for (std::size_t i = 0; i < std::min<std::size_t>(kern.size(), 4); ++i) {
        candidates.push_back(a0 + as_matrix(kern[i]));
        candidates.push_back(a0 - as_matrix(kern[i]));
    }
    for (const auto& c : candidates) {
        for (const Matrix& cand : {c, semisimple_part(c)}) {
            if (auto g = grading_from_field(cand, recon.algebra, &rep.eigenvalues)) {
                rep.witness = g;
                rep.verdict = GradingVerdict::gradable_with_witness;
                return rep;
            }
        }
    }
    return rep;
}

std::optional<std::vector<MPoly>> jacobi_membership(const MPoly& p, unsigned d) {
    std::size_t m = p.nvars();
    std::vector<Monomial> monos;
    Monomial cur(m, 0);
    // All exponent vectors of total degree ≤ d.
    std::function<void(std::size_t, unsigned)> gen = [&](std::size_t i, unsigned left) {
        if (i == m) {
            monos.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[i] = e;
            gen(i + 1, left - e);
        }
        cur[i] = 0;
    };
    gen(0, d);
    std::size_t nm = monos.size(), rhs = m * nm;
    std::vector<MPoly> dp;
    for (std::size_t k = 0; k < m; ++k) dp.push_back(p.derivative(k));
    RowCollector rows;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < nm; ++i) rows.add(0, dp[k].shift(monos[i]), k * nm + i);
    rows.add(0, p, rhs);
    RowEchelon e(rhs + 1);
    rows.feed(e);
    auto sol = e.particular(rhs, rhs);
    if (!sol) return std::nullopt;
    std::vector<MPoly> lambda;
    MPoly check = MPoly(p.context());
    for (std::size_t k = 0; k < m; ++k) {
        MPoly l(p.context());
        for (std::size_t i = 0; i < nm; ++i)
            if ((*sol)[k * nm + i] != 0) l.add_term(monos[i], (*sol)[k * nm + i]);
        check += l * dp[k];
        lambda.push_back(std::move(l));
    }
    if (check != p) throw std::logic_error("Jacobi representation failed verification");
    return lambda;
}

Vec point_on_hypersurface(const NilAlgebra& a, const Pointing& p, const Vec& coeffs) {
    auto kb = kernel_basis(p);
    if (coeffs.size() != kb.size()) throw std::invalid_argument("one coefficient per kernel direction required");
    Vec w = zero_vec(a.dim());
    for (std::size_t i = 0; i < kb.size(); ++i) w = w + coeffs[i] * kb[i];
    return log1(a, w);
}

bool preserves_hypersurface(const NilAlgebra& a, const Pointing& p, const AffineMap& g) {
    VarList vars = standard_vars(a.dim(), "t");
    MPoly f = hypersurface_function(a, p, vars);
    std::vector<MPoly> images;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        MPoly im = MPoly::constant(f, g.translation[i]);
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (g.linear(i, k) != 0) im += g.linear(i, k) * MPoly::variable(vars, k);
        images.push_back(std::move(im));
    }
    if (f.is_zero()) return true;
    return f.compose(images) == f;
}

namespace {

Subspace socle(const NilAlgebra& a, std::size_t k) {
    auto chain = socle_chain(a);
    return chain[std::min(k, chain.size() - 1)];
}

AffineMap socle3_map(const NilAlgebra& a, const Pointing& p, const Vec& point) {
    std::size_t n = a.dim();
    Matrix rho = Rational(1, 2) * (Matrix::identity(n) + projection(a, p));
    Matrix lin = Matrix::identity(n) - rho * a.mult_operator(point);
    return inverse(AffineMap{lin, point});
}

// Affine map on N induced by exp of λ on F·1 ⊕ N, where λ(1) = lam1 and
// λ|_N = lam.
AffineMap unipotent_step(const Matrix& lam, const Vec& lam1) {
    std::size_t n = lam.rows();
    Matrix big(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        big(i + 1, 0) = lam1[i];
        for (std::size_t j = 0; j < n; ++j) big(i + 1, j + 1) = lam(i, j);
    }
    Matrix g = exp_nilpotent(big);
    AffineMap out{Matrix(n, n), zero_vec(n)};
    for (std::size_t i = 0; i < n; ++i) {
        out.translation[i] = g(i + 1, 0);
        for (std::size_t j = 0; j < n; ++j) out.linear(i, j) = g(i + 1, j + 1);
    }
    return out;
}

AffineMap socle4_map(const NilAlgebra& a, const Pointing& p, const Vec& point) {
    std::size_t n = a.dim();
    PointedSplit sp = pointed_split(a, p);
    AdaptedDecomposition dec = adapted_decomposition(sp.ops, sp.h);
    std::size_t m = sp.w_basis.size();
    Matrix pi = projection(a, p);
    Vec c_alg = point - pi.apply(point);
    Vec c = to_w(sp, c_alg);
    Matrix nc(m, m);
    for (std::size_t i = 0; i < m; ++i)
        if (c[i] != 0) nc = nc + c[i] * sp.ops[i];

    std::vector<Vec> cols;
    std::vector<std::size_t> block;
    const std::vector<Vec>* parts[4] = {&dec.e0, &dec.e1, &dec.e2, &dec.e3};
    for (std::size_t k = 0; k < 4; ++k)
        for (const auto& v : *parts[k]) {
            cols.push_back(v);
            block.push_back(k);
        }
    Matrix b = Matrix::from_columns(cols, m);
    Matrix binv = nilforge::inverse(b);
    auto proj = [&](std::size_t k) {
        Matrix d(m, m);
        for (std::size_t i = 0; i < m; ++i)
            if (block[i] == k) d(i, i) = 1;
        return b * d * binv;
    };
    Matrix pm = proj(3) * nc * proj(2) - proj(2) * nc * proj(1);
    Matrix q = Rational(1, 2) * nc + Rational(1, 6) * pm;
    Vec hc = sp.h.transpose().apply(c);  // x ↦ h(c, x)

    Matrix lam(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec ei = unit_vec(n, i);
        Vec xw = to_w(sp, ei - pi.apply(ei));
        Vec col = from_w(sp, q.apply(xw)) + dot(hc, xw) * sp.unit;
        for (std::size_t r = 0; r < n; ++r) lam(r, i) = col[r];
    }
    AffineMap g = unipotent_step(lam, Rational(-1) * c_alg);
    Vec b3 = g(point);
    if (!socle(a, 3).contains(b3)) throw std::logic_error("index-4 step did not reach the third socle");
    return compose(socle3_map(a, p, b3), g);
}

unsigned min_weight(const Grading& g, const Matrix& ginv, const Vec& x) {
    Vec y = ginv.apply(x);
    unsigned best = *std::max_element(g.weights.begin(), g.weights.end()) + 1;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] != 0) best = std::min(best, g.weights[i]);
    return best;
}

AffineMap graded_map(const NilAlgebra& a, const Pointing& p, const Vec& point, const Grading& g,
                     std::vector<unsigned>& trace) {
    std::size_t n = a.dim();
    if (!verify_grading(a, g).valid) throw std::domain_error("grading does not verify");
    unsigned d = *std::max_element(g.weights.begin(), g.weights.end());
    Matrix ginv = nilforge::inverse(g.basis);
    for (std::size_t i = 0; i < n; ++i)
        if (g.weights[i] != d && dot(p.omega, g.basis.col(i)) != 0)
            throw std::domain_error("pointing is not compatible with the grading");
    Vec u = unit_annihilator(a, p);
    if (min_weight(g, ginv, u) != d) throw std::domain_error("annihilator is not in the top weight");

    Matrix pi = projection(a, p);
    AffineMap total{Matrix::identity(n), zero_vec(n)};
    Vec cur = point;
    for (unsigned j = 1; j < d; ++j) {
        Vec y = ginv.apply(cur);
        Vec aj = zero_vec(n);
        for (std::size_t i = 0; i < n; ++i)
            if (g.weights[i] == j && y[i] != 0) aj = aj + y[i] * g.basis.col(i);
        if (!is_zero(aj)) {
            Matrix diag(n, n);
            for (std::size_t i = 0; i < n; ++i)
                if (g.weights[i] <= d - j) diag(i, i) = make_rational(g.weights[i], d - j);
            Matrix lam = a.mult_operator(aj) * (g.basis * diag * ginv);
            AffineMap step = unipotent_step(lam, Rational(-1) * aj);
            cur = step(cur);
            total = compose(step, total);
        }
        trace.push_back(min_weight(g, ginv, cur));
    }
    AffineMap shift{Matrix::identity(n), Rational(-1) * (cur - pi.apply(cur))};
    return compose(shift, total);
}

}  // namespace

TransitivityWitness transitivity_witness(const NilAlgebra& a, const Pointing& p, const Vec& point, WitnessMode mode,
                                         const std::optional<Grading>& grading) {
    check_pointing(a, p);
    if (point.size() != a.dim()) throw std::invalid_argument("point dimension mismatch");
    if (dot(p.omega, exp1(a, point)) != 0) throw std::domain_error("point is not on the hypersurface");
    TransitivityWitness w;
    switch (mode) {
        case WitnessMode::socle3:
            if (!socle(a, 3).contains(point)) throw std::domain_error("point is not in the third socle");
            w.map = socle3_map(a, p, point);
            break;
        case WitnessMode::socle4:
            if (!socle(a, 4).contains(point)) throw std::domain_error("point is not in the fourth socle");
            w.map = socle4_map(a, p, point);
            break;
        case WitnessMode::graded:
            if (!grading) throw std::domain_error("graded mode requires a grading");
            w.map = graded_map(a, p, point, *grading, w.min_weight_trace);
            break;
    }
    w.verified = is_zero(w.map(point)) && preserves_hypersurface(a, p, w.map);
    return w;
}

}  // namespace nilforge
