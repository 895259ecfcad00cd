#include "nilforge/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilforge {

NilAlgebra::NilAlgebra(std::vector<std::string> labels)
    : labels_(std::move(labels)), table_(labels_.size() * labels_.size()) {}

void NilAlgebra::check(std::size_t i) const {
    if (i >= dim()) throw std::out_of_range("basis index out of range");
}

void NilAlgebra::set_product(std::size_t i, std::size_t j, const Vec& value) {
    if (value.size() != dim()) throw std::invalid_argument("product vector length does not match dimension");
    set_product(i, j, to_sparse(value));
}

void NilAlgebra::set_product(std::size_t i, std::size_t j, SparseRow value) {
    check(i);
    check(j);
    std::sort(value.begin(), value.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::erase_if(value, [](const auto& e) { return e.second == 0; });
    for (const auto& e : value) check(e.first);
    table_[i * dim() + j] = value;
    table_[j * dim() + i] = std::move(value);
}

const SparseRow& NilAlgebra::product(std::size_t i, std::size_t j) const {
    check(i);
    check(j);
    return table_[i * dim() + j];
}

Vec NilAlgebra::product_vec(std::size_t i, std::size_t j) const {
    Vec v = zero_vec(dim());
    for (const auto& [c, x] : product(i, j)) v[c] = x;
    return v;
}

Vec NilAlgebra::mul(const Vec& x, const Vec& y) const {
    if (x.size() != dim() || y.size() != dim()) throw std::invalid_argument("element length does not match dimension");
    Vec r = zero_vec(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j] == 0) continue;
            Rational f = x[i] * y[j];
            for (const auto& [c, v] : table_[i * dim() + j]) r[c] += f * v;
        }
    }
    return r;
}

Matrix NilAlgebra::mult_operator(const Vec& x) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) m.set_col(j, mul(x, unit_vec(dim(), j)));
    return m;
}

Vec NilAlgebra::power(const Vec& x, unsigned k) const {
    if (k == 0) throw std::invalid_argument("power exponent must be positive");
    Vec r = x;
    for (unsigned i = 1; i < k && !is_zero(r); ++i) r = mul(r, x);
    return r;
}

PolyVec NilAlgebra::mul(const PolyVec& x, const PolyVec& y) const {
    if (x.size() != dim() || y.size() != dim()) throw std::invalid_argument("element length does not match dimension");
    PolyVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            const auto& prod = table_[i * dim() + j];
            if (y[j].is_zero() || prod.empty()) continue;
            MPoly f = x[i] * y[j];
            for (const auto& [c, v] : prod) r[c] += v * f;
        }
    }
    return r;
}

namespace {

Vec times_basis(const NilAlgebra& a, const SparseRow& x, std::size_t k) {
    Vec r = zero_vec(a.dim());
    for (const auto& [m, c] : x)
        for (const auto& [t, v] : a.product(m, k)) r[t] += c * v;
    return r;
}

Vec basis_times(const NilAlgebra& a, std::size_t i, const SparseRow& x) {
    Vec r = zero_vec(a.dim());
    for (const auto& [m, c] : x)
        for (const auto& [t, v] : a.product(i, m)) r[t] += c * v;
    return r;
}

}  // namespace

std::vector<Subspace> power_chain(const NilAlgebra& a) {
    std::size_t n = a.dim();
    std::vector<Subspace> chain{Subspace::whole(n)};
    while (chain.back().dim() > 0) {
        std::vector<Vec> gens;
        for (const auto& b : chain.back().basis())
            for (std::size_t j = 0; j < n; ++j) gens.push_back(times_basis(a, to_sparse(b), j));
        Subspace next = Subspace::span(n, gens);
        if (next.dim() == chain.back().dim()) break;  // stationary and nonzero: not nilpotent
        chain.push_back(std::move(next));
    }
    return chain;
}

AlgebraReport verify_algebra(const NilAlgebra& a) {
    AlgebraReport r;
    std::size_t n = a.dim();
    r.associative = true;
    for (std::size_t i = 0; i < n && r.associative; ++i)
        for (std::size_t j = 0; j < n && r.associative; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (times_basis(a, a.product(i, j), k) != basis_times(a, i, a.product(j, k))) {
                    r.associative = false;
                    r.failing_triple = std::array<std::size_t, 3>{i, j, k};
                    break;
                }
            }
    auto chain = power_chain(a);
    r.nilpotent = chain.back().dim() == 0;
    r.nil_index = r.nilpotent ? chain.size() - 1 : 0;
    if (r.nilpotent && r.associative) r.admissible = annihilator(a).dim() == 1;
    return r;
}

namespace {

Subspace annihilator_of(const NilAlgebra& a, const Subspace& s) {
    std::size_t n = a.dim();
    std::vector<Vec> rows;
    for (const auto& b : s.basis()) {
        Matrix m = a.mult_operator(b);
        for (std::size_t r = 0; r < n; ++r) rows.push_back(m.row(r));
    }
    if (rows.empty()) return Subspace::whole(n);
    return kernel(Matrix::from_rows(rows));
}

}  // namespace

Subspace annihilator(const NilAlgebra& a) { return annihilator_of(a, Subspace::whole(a.dim())); }

std::vector<Subspace> socle_chain(const NilAlgebra& a) {
    auto powers = power_chain(a);
    if (powers.back().dim() != 0) throw std::domain_error("socle chain of a non-nilpotent algebra");
    std::vector<Subspace> chain{Subspace(a.dim())};
    for (const auto& p : powers) chain.push_back(annihilator_of(a, p));
    return chain;
}

Invariants invariants(const NilAlgebra& a) {
    Invariants inv;
    inv.powers = power_chain(a);
    if (inv.powers.back().dim() != 0) throw std::domain_error("invariants of a non-nilpotent algebra");
    inv.nil_index = inv.powers.size() - 1;
    inv.socles = socle_chain(a);
    inv.annihilator = inv.socles.size() > 1 ? inv.socles[1] : Subspace(a.dim());
    inv.admissible = inv.annihilator.dim() == 1;
    inv.hilbert.push_back(1);
    for (std::size_t k = 1; k <= inv.nil_index; ++k)
        inv.hilbert.push_back(inv.powers[k - 1].dim() - inv.powers[k].dim());
    inv.hilbert_symmetric = true;
    for (std::size_t k = 0; k <= inv.nil_index; ++k)
        if (inv.hilbert[k] != inv.hilbert[inv.nil_index - k]) inv.hilbert_symmetric = false;
    return inv;
}

NilAlgebra associated_graded(const NilAlgebra& a, std::vector<unsigned>* weights, Matrix* lift) {
    auto chain = power_chain(a);
    if (chain.back().dim() != 0) throw std::domain_error("associated graded of a non-nilpotent algebra");
    std::size_t n = a.dim();
    std::vector<Vec> basis;
    std::vector<unsigned> w;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k)
        for (auto& v : complement_basis(chain[k + 1], chain[k])) {
            basis.push_back(std::move(v));
            w.push_back(static_cast<unsigned>(k + 1));
        }
    Matrix p = Matrix::from_columns(basis, n);
    Matrix pinv = inverse(p);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i + 1));
    NilAlgebra g(labels);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Vec c = pinv.apply(a.mul(basis[i], basis[j]));
            for (std::size_t k = 0; k < n; ++k)
                if (w[k] != w[i] + w[j]) c[k] = 0;
            g.set_product(i, j, c);
        }
    if (weights) *weights = w;
    if (lift) *lift = p;
    return g;
}

Vec exp1(const NilAlgebra& a, const Vec& x) {
    Vec sum = zero_vec(a.dim());
    Vec term = x;
    for (unsigned k = 1; !is_zero(term); ++k) {
        sum = sum + (1 / factorial(k)) * term;
        term = a.mul(term, x);
        if (k > a.dim() + 1) throw std::domain_error("exponential series does not terminate");
    }
    return sum;
}

Vec log1(const NilAlgebra& a, const Vec& x) {
    Vec sum = zero_vec(a.dim());
    Vec term = x;
    for (long k = 1; !is_zero(term); ++k) {
        Rational c(k % 2 ? 1 : -1, k);
        sum = sum + c * term;
        term = a.mul(term, x);
        if (k > static_cast<long>(a.dim()) + 1) throw std::domain_error("logarithm series does not terminate");
    }
    return sum;
}

Vec annihilator_generator(const NilAlgebra& a) {
    Subspace ann = annihilator(a);
    if (ann.dim() != 1) throw std::domain_error("algebra is not admissible (annihilator dimension " +
                                                std::to_string(ann.dim()) + ")");
    return ann.basis()[0];
}

std::size_t pointing_index(const Pointing& p) {
    for (std::size_t i = p.omega.size(); i-- > 0;)
        if (p.omega[i] != 0) return i;
    throw std::domain_error("zero pointing");
}

Pointing default_pointing(const NilAlgebra& a) {
    Vec gen = annihilator_generator(a);
    std::size_t i0 = pointing_index(Pointing{gen});
    Pointing p{zero_vec(a.dim())};
    p.omega[i0] = 1 / gen[i0];
    return p;
}

void check_pointing(const NilAlgebra& a, const Pointing& p) {
    if (p.omega.size() != a.dim()) throw std::invalid_argument("pointing length does not match dimension");
    if (dot(p.omega, annihilator_generator(a)) == 0)
        throw std::domain_error("pointing vanishes on the annihilator");
}

Vec unit_annihilator(const NilAlgebra& a, const Pointing& p) {
    check_pointing(a, p);
    Vec gen = annihilator_generator(a);
    return (1 / dot(p.omega, gen)) * gen;
}

Matrix projection(const NilAlgebra& a, const Pointing& p) {
    Vec u = unit_annihilator(a, p);
    Matrix m(a.dim(), a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) m(r, c) = u[r] * p.omega[c];
    return m;
}

std::vector<Vec> kernel_basis(const Pointing& p) {
    std::size_t i0 = pointing_index(p);
    std::vector<Vec> out;
    for (std::size_t i = 0; i < p.omega.size(); ++i) {
        if (i == i0) continue;
        Vec v = unit_vec(p.omega.size(), i);
        v[i0] = -p.omega[i] / p.omega[i0];
        out.push_back(std::move(v));
    }
    return out;
}

bool is_homomorphism(const NilAlgebra& source, const NilAlgebra& target, const Matrix& m) {
    if (m.cols() != source.dim() || m.rows() != target.dim()) return false;
    for (std::size_t i = 0; i < source.dim(); ++i)
        for (std::size_t j = i; j < source.dim(); ++j)
            if (m.apply(source.product_vec(i, j)) != target.mul(m.col(i), m.col(j))) return false;
    return true;
}

DerivationResult derivation_algebra(const NilAlgebra& a) {
    std::size_t n = a.dim();
    // Unknown D(e_b)_a sits in column a*n + b.
    RowEchelon e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::vector<SparseRow> rows(n);
            for (const auto& [k, v] : a.product(i, j))
                for (std::size_t c = 0; c < n; ++c) rows[c].emplace_back(c * n + k, v);
            for (std::size_t m = 0; m < n; ++m) {
                for (const auto& [c, v] : a.product(m, j)) rows[c].emplace_back(m * n + i, -v);
                for (const auto& [c, v] : a.product(i, m)) rows[c].emplace_back(m * n + j, -v);
            }
            for (auto& r : rows) {
                if (r.empty()) continue;
                SparseMatrix s(n * n);
                s.add_row(std::move(r));
                e.insert(s.row(0));
            }
        }
    DerivationResult out;
    for (const auto& k : e.kernel_basis(n * n)) {
        Matrix d(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) d(r, c) = k[r * n + c];
        out.basis.push_back(std::move(d));
    }
    return out;
}

bool is_derivation(const NilAlgebra& a, const Matrix& d) {
    std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (d.apply(a.product_vec(i, j)) != a.mul(d.col(i), unit_vec(n, j)) + a.mul(unit_vec(n, i), d.col(j)))
                return false;
    return true;
}

Vec derivation_shift(const NilAlgebra& a, const Pointing& p, const Matrix& d) {
    std::size_t n = a.dim();
    Matrix pi = projection(a, p);
    Vec gen = annihilator_generator(a);
    Vec dgen = d.apply(gen);
    if (!Subspace::span(n, {gen}).contains(dgen)) throw std::domain_error("map does not preserve the annihilator");
    Matrix sys(n + 1, n);
    Vec rhs(n + 1, Rational(0));
    Matrix dpi = d * pi;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) sys(i, k) = dot(p.omega, a.product_vec(k, i));
        rhs[i] = dot(p.omega, d.col(i)) - dot(p.omega, dpi.col(i));
    }
    for (std::size_t k = 0; k < n; ++k) sys(n, k) = p.omega[k];
    auto sol = rref_solve(sys, rhs);
    if (!sol.consistent || !sol.kernel_basis.empty()) throw std::domain_error("no unique shift vector");
    Vec v = *sol.particular;
    if (pi * d - d * pi != pi * a.mult_operator(v)) throw std::domain_error("map is not a derivation");
    return v;
}

PolyVec linear_element(const std::vector<Vec>& basis, const VarList& vars) {
    if (basis.size() != vars.size()) throw std::invalid_argument("one variable per basis vector required");
    MPoly ctx(vars);
    std::size_t n = basis.empty() ? 0 : basis[0].size();
    PolyVec x(n, MPoly(ctx.context()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        MPoly xi = MPoly::variable(ctx, i);
        for (std::size_t c = 0; c < n; ++c)
            if (basis[i][c] != 0) x[c] += basis[i][c] * xi;
    }
    return x;
}

namespace {

VarList coordinate_names(std::size_t n) {
    VarList v;
    for (std::size_t i = 0; i < n; ++i) v.push_back("t" + std::to_string(i + 1));
    return v;
}

MPoly apply_functional(const Vec& omega, const PolyVec& x, const MPoly& ctx) {
    MPoly r(ctx.context());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (omega[i] != 0) r += omega[i] * x[i];
    return r;
}

PolyVec symbolic_exp1(const NilAlgebra& a, const PolyVec& x) {
    PolyVec sum = x;
    PolyVec term = x;
    for (unsigned k = 2;; ++k) {
        term = a.mul(term, x);
        if (std::all_of(term.begin(), term.end(), [](const MPoly& p) { return p.is_zero(); })) break;
        Rational f = 1 / factorial(k);
        for (std::size_t c = 0; c < x.size(); ++c) sum[c] += f * term[c];
        if (k > a.dim() + 1) throw std::domain_error("exponential series does not terminate");
    }
    return sum;
}

}  // namespace

MPoly hypersurface_function(const NilAlgebra& a, const Pointing& p, const VarList& vars) {
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < a.dim(); ++i) basis.push_back(unit_vec(a.dim(), i));
    PolyVec x = linear_element(basis, vars);
    return apply_functional(p.omega, symbolic_exp1(a, x), MPoly(vars));
}

bool tangency_identity(const NilAlgebra& a, const Pointing& p, const Matrix& d, const Vec& v) {
    std::size_t n = a.dim();
    VarList vars = coordinate_names(n);
    MPoly ctx(vars);
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(unit_vec(n, i));
    PolyVec x = linear_element(basis, vars);
    PolyVec e = symbolic_exp1(a, x);
    PolyVec ax(n, MPoly(ctx.context()));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            if (d(r, c) != 0) ax[r] += d(r, c) * x[c];
        ax[r] -= MPoly::constant(ctx, v[r]);
    }
    PolyVec prod = a.mul(e, ax);
    for (std::size_t r = 0; r < n; ++r) prod[r] += ax[r];
    Vec gen = annihilator_generator(a);
    Vec dgen = d.apply(gen);
    std::size_t i0 = pointing_index(Pointing{gen});
    Rational mu = dgen[i0] / gen[i0];
    return apply_functional(p.omega, prod, ctx) == mu * apply_functional(p.omega, e, ctx);
}

DerivationBounds derivation_bounds(const NilAlgebra& a, std::size_t der_dim) {
    auto inv = invariants(a);
    auto pw = [&](std::size_t k) { return k - 1 < inv.powers.size() ? inv.powers[k - 1].dim() : std::size_t{0}; };
    auto soc = [&](std::size_t k) { return k < inv.socles.size() ? inv.socles[k].dim() : a.dim(); };
    DerivationBounds b;
    b.der_dim = der_dim;
    b.ty_bound = (a.dim() - pw(2)) * soc(1) + (soc(3) - soc(2));
    b.quartic_bound = a.dim() - pw(4);
    b.ty_holds = der_dim >= b.ty_bound;
    b.quartic_holds = der_dim >= b.quartic_bound;
    return b;
}

PointedAlgebra smash_product(const PointedAlgebra& pa, const PointedAlgebra& pb) {
    const NilAlgebra& a = pa.algebra;
    const NilAlgebra& b = pb.algebra;
    check_pointing(a, pa.pointing);
    check_pointing(b, pb.pointing);
    std::size_t na = a.dim(), nb = b.dim();
    Vec ua = unit_annihilator(a, pa.pointing);
    Vec gb = annihilator_generator(b);
    std::size_t j0 = pointing_index(Pointing{gb});
    Rational wb = dot(pb.pointing.omega, gb);
    std::size_t n = na + nb - 1;

    auto b_index = [&](std::size_t k) { return na + (k < j0 ? k : k - 1); };
    // Image of e^B_k in the quotient.
    auto reduce_b = [&](const Vec& x) {
        Vec r = zero_vec(n);
        for (std::size_t k = 0; k < nb; ++k) {
            if (x[k] == 0) continue;
            if (k != j0) {
                r[b_index(k)] += x[k];
                continue;
            }
            Rational f = x[k] / gb[j0];
            for (std::size_t i = 0; i < na; ++i) r[i] += f * wb * ua[i];
            for (std::size_t m = 0; m < nb; ++m)
                if (m != j0 && gb[m] != 0) r[b_index(m)] -= f * gb[m];
        }
        return r;
    };

    std::vector<std::string> labels = a.labels();
    for (std::size_t k = 0; k < nb; ++k) {
        if (k == j0) continue;
        std::string l = b.labels()[k];
        while (std::find(labels.begin(), labels.end(), l) != labels.end()) l += "'";
        labels.push_back(l);
    }
    NilAlgebra out(labels);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = i; j < na; ++j) {
            Vec v = zero_vec(n);
            for (const auto& [c, x] : a.product(i, j)) v[c] = x;
            out.set_product(i, j, v);
        }
    for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t m = k; m < nb; ++m) {
            if (k == j0 || m == j0) continue;
            out.set_product(b_index(k), b_index(m), reduce_b(b.product_vec(k, m)));
        }
    Pointing p{zero_vec(n)};
    for (std::size_t i = 0; i < na; ++i) p.omega[i] = pa.pointing.omega[i];
    for (std::size_t k = 0; k < nb; ++k)
        if (k != j0) p.omega[b_index(k)] = pb.pointing.omega[k];
    return {std::move(out), std::move(p)};
}

}  // namespace nilforge
