#include "nilforge/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilforge {

namespace {

// a - f*b on sorted sparse rows.
SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, -f * b[j].second);
            ++j;
        } else {
            Rational v = a[i].second - f * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

const Rational* find_entry(const SparseRow& row, std::size_t col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace

RowEchelon::RowEchelon(std::size_t cols) : cols_(cols), pivot_row_(cols, -1), scratch_(cols, Rational(0)) {}

bool RowEchelon::insert(const Vec& row) {
    if (row.size() != cols_) throw std::invalid_argument("row length does not match echelon width");
    return insert(to_sparse(row));
}

bool RowEchelon::insert(const SparseRow& row) {
    std::vector<std::size_t> support;
    support.reserve(row.size() * 2);
    std::vector<std::size_t> touched_pivots;
    for (const auto& [c, v] : row) {
        if (c >= cols_) throw std::out_of_range("row entry beyond echelon width");
        if (scratch_[c] == 0) support.push_back(c);
        scratch_[c] += v;
        if (pivot_row_[c] >= 0) touched_pivots.push_back(c);
    }
    // Pivot rows vanish on every other pivot column, so eliminating the
    // pivots present in the input suffices.
    for (std::size_t p : touched_pivots) {
        if (scratch_[p] == 0) continue;
        Rational f = scratch_[p];
        for (const auto& [c, v] : rows_[pivot_row_[p]]) {
            if (scratch_[c] == 0) support.push_back(c);
            scratch_[c] -= f * v;
        }
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    SparseRow rem;
    for (std::size_t c : support) {
        if (scratch_[c] != 0) rem.emplace_back(c, scratch_[c]);
        scratch_[c] = 0;
    }
    if (rem.empty()) return false;

    std::size_t p = rem.front().first;
    Rational inv = 1 / rem.front().second;
    for (auto& e : rem) e.second *= inv;
    for (auto& r : rows_) {
        if (const Rational* x = find_entry(r, p)) {
            Rational f = *x;
            r = axpy(r, f, rem);
        }
    }
    pivot_row_[p] = static_cast<long>(rows_.size());
    pivot_of_row_.push_back(p);
    rows_.push_back(std::move(rem));
    return true;
}

SparseRow RowEchelon::reduce(const SparseRow& row) const {
    SparseRow cur = row;
    std::sort(cur.begin(), cur.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::size_t> piv;
    for (const auto& [c, v] : cur) {
        if (c >= cols_) throw std::out_of_range("row entry beyond echelon width");
        if (pivot_row_[c] >= 0) piv.push_back(c);
    }
    for (std::size_t p : piv) {
        const Rational* x = find_entry(cur, p);
        if (!x) continue;
        Rational f = *x;
        cur = axpy(cur, f, rows_[pivot_row_[p]]);
    }
    return cur;
}

Vec RowEchelon::reduce(const Vec& row) const {
    if (row.size() != cols_) throw std::invalid_argument("row length does not match echelon width");
    Vec out(cols_, Rational(0));
    for (auto& [c, v] : reduce(to_sparse(row))) out[c] = v;
    return out;
}

bool RowEchelon::contains(const Vec& row) const { return reduce(to_sparse(row)).empty(); }

std::vector<std::size_t> RowEchelon::pivots() const {
    std::vector<std::size_t> p = pivot_of_row_;
    std::sort(p.begin(), p.end());
    return p;
}

std::vector<SparseRow> RowEchelon::rows() const {
    std::vector<SparseRow> out;
    for (std::size_t p : pivots()) out.push_back(rows_[pivot_row_[p]]);
    return out;
}

std::vector<Vec> RowEchelon::dense_rows() const {
    std::vector<Vec> out;
    for (const auto& r : rows()) {
        Vec v(cols_, Rational(0));
        for (const auto& [c, x] : r) v[c] = x;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vec> RowEchelon::kernel_basis(std::size_t ncols) const {
    if (ncols > cols_) throw std::out_of_range("kernel prefix exceeds width");
    std::vector<Vec> out;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (pivot_row_[f] >= 0) continue;
        Vec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            std::size_t p = pivot_of_row_[r];
            if (p >= ncols) continue;
            if (const Rational* x = find_entry(rows_[r], f)) v[p] = -*x;
        }
        out.push_back(std::move(v));
    }
    return out;
}

bool RowEchelon::consistent(std::size_t ncols, std::size_t rhs_col) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (pivot_of_row_[r] >= ncols && find_entry(rows_[r], rhs_col)) return false;
    return true;
}

std::optional<Vec> RowEchelon::particular(std::size_t ncols, std::size_t rhs_col) const {
    if (!consistent(ncols, rhs_col)) return std::nullopt;
    Vec x(ncols, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        std::size_t p = pivot_of_row_[r];
        if (p >= ncols) continue;
        if (const Rational* v = find_entry(rows_[r], rhs_col)) x[p] = *v;
    }
    return x;
}

std::size_t RowEchelon::rank_of_prefix(std::size_t ncols) const {
    return static_cast<std::size_t>(
        std::count_if(pivot_of_row_.begin(), pivot_of_row_.end(), [&](std::size_t p) { return p < ncols; }));
}

namespace {

LinearSolution finish(const RowEchelon& e, std::size_t n, bool has_rhs) {
    LinearSolution s;
    s.rank = e.rank_of_prefix(n);
    s.kernel_basis = e.kernel_basis(n);
    if (has_rhs) {
        s.particular = e.particular(n, n);
        s.consistent = s.particular.has_value();
    }
    return s;
}

}  // namespace

LinearSolution rref_solve(const Matrix& a, const std::optional<Vec>& b) {
    return rref_solve(SparseMatrix::from_dense(a), b);
}

LinearSolution rref_solve(const SparseMatrix& a, const std::optional<Vec>& b) {
    if (b && b->size() != a.rows()) throw std::invalid_argument("right-hand side length does not match row count");
    std::size_t n = a.cols();
    RowEchelon e(n + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        SparseRow row = a.row(r);
        if (b && (*b)[r] != 0) row.emplace_back(n, (*b)[r]);
        e.insert(row);
    }
    return finish(e, n, b.has_value());
}

std::size_t rank(const Matrix& a) {
    RowEchelon e(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) e.insert(to_sparse(a.row(r)));
    return e.rank();
}

Matrix rref(const Matrix& a) {
    RowEchelon e(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) e.insert(to_sparse(a.row(r)));
    auto rows = e.dense_rows();
    Matrix m(a.rows(), a.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = rows[r][c];
    return m;
}

Rational determinant(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
    Matrix m = a;
    std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(p, k), m(c, k));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Rational f = m(r, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return det;
}

Matrix inverse(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = a.rows();
    RowEchelon e(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        SparseRow row = to_sparse(a.row(r));
        row.emplace_back(n + r, Rational(1));
        e.insert(row);
    }
    if (e.rank_of_prefix(n) != n) throw std::domain_error("matrix is singular");
    Matrix inv(n, n);
    auto rows = e.rows();
    for (std::size_t r = 0; r < n; ++r)
        for (const auto& [c, v] : rows[r])
            if (c >= n) inv(r, c - n) = v;
    return inv;
}

Vec solve_unique(const Matrix& a, const Vec& b) {
    if (!a.square()) throw std::invalid_argument("solve_unique needs a square matrix");
    auto s = rref_solve(a, b);
    if (s.rank != a.cols()) throw std::domain_error("matrix is singular");
    if (!s.consistent) throw std::domain_error("inconsistent system");
    return *s.particular;
}

Subspace::Subspace(std::size_t ambient) : ambient_(ambient) {}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec>& vectors) {
    RowEchelon e(ambient);
    for (const auto& v : vectors) e.insert(v);
    Subspace s(ambient);
    s.basis_ = e.dense_rows();
    return s;
}

Subspace Subspace::whole(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.basis_.push_back(unit_vec(ambient, i));
    return s;
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector length does not match subspace ambient");
    RowEchelon e(ambient_);
    for (const auto& b : basis_) e.insert(b);
    return e.contains(v);
}

bool Subspace::contains(const Subspace& other) const {
    RowEchelon e(ambient_);
    for (const auto& b : basis_) e.insert(b);
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vec& v) { return e.contains(v); });
}

Subspace sum(const Subspace& a, const Subspace& b) {
    std::vector<Vec> all = a.basis();
    all.insert(all.end(), b.basis().begin(), b.basis().end());
    return Subspace::span(a.ambient(), all);
}

Subspace intersection(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw std::invalid_argument("subspaces live in different spaces");
    std::size_t n = a.ambient();
    if (a.dim() == 0 || b.dim() == 0) return Subspace(n);
    std::vector<Vec> cols = a.basis();
    for (const auto& v : b.basis()) cols.push_back(Rational(-1) * v);
    Matrix m = Matrix::from_columns(cols, n);
    std::vector<Vec> out;
    for (const auto& k : rref_solve(m).kernel_basis) {
        Vec v = zero_vec(n);
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (k[i] != 0) v = v + k[i] * a.basis()[i];
        out.push_back(std::move(v));
    }
    return Subspace::span(n, out);
}

Subspace kernel(const Matrix& a) { return Subspace::span(a.cols(), rref_solve(a).kernel_basis); }

std::vector<Vec> complement_basis(const Subspace& sub, const Subspace& super) {
    RowEchelon e(sub.ambient());
    for (const auto& v : sub.basis()) e.insert(v);
    std::vector<Vec> out;
    for (const auto& v : super.basis())
        if (e.insert(v)) out.push_back(v);
    return out;
}

UPoly upoly_trim(UPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return upoly_trim(r);
}

UPoly upoly_sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return upoly_trim(r);
}

UPoly upoly_derivative(const UPoly& p) {
    UPoly r;
    for (std::size_t i = 1; i < p.size(); ++i) r.push_back(Rational(static_cast<long>(i)) * p[i]);
    return upoly_trim(r);
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b) {
    UPoly bt = upoly_trim(b);
    if (bt.empty()) throw std::domain_error("polynomial division by zero");
    UPoly rem = upoly_trim(a);
    if (rem.size() < bt.size()) return {{}, rem};
    UPoly q(rem.size() - bt.size() + 1, Rational(0));
    while (!rem.empty() && rem.size() >= bt.size()) {
        std::size_t shift = rem.size() - bt.size();
        Rational f = rem.back() / bt.back();
        q[shift] = f;
        for (std::size_t i = 0; i < bt.size(); ++i) rem[i + shift] -= f * bt[i];
        rem = upoly_trim(rem);
    }
    return {upoly_trim(q), rem};
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
    UPoly x = upoly_trim(a), y = upoly_trim(b);
    while (!y.empty()) {
        UPoly r = upoly_divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.empty()) return x;
    Rational lc = x.back();
    for (auto& c : x) c /= lc;
    return x;
}

Rational upoly_eval(const UPoly& p, const Rational& x) {
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

std::vector<UPoly> upoly_squarefree(const UPoly& p) {
    // Yun's algorithm.
    UPoly f = upoly_trim(p);
    if (f.size() <= 1) return {};
    std::vector<UPoly> out;
    UPoly fp = upoly_derivative(f);
    UPoly a = upoly_gcd(f, fp);
    UPoly b = upoly_divmod(f, a).first;
    UPoly c = upoly_divmod(fp, a).first;
    UPoly d = upoly_sub(c, upoly_derivative(b));
    while (b.size() > 1) {
        UPoly g = upoly_gcd(b, d);
        out.push_back(g);
        b = upoly_divmod(b, g).first;
        c = upoly_divmod(d, g).first;
        d = upoly_sub(c, upoly_derivative(b));
    }
    while (!out.empty() && out.back().size() <= 1) out.pop_back();
    for (auto& g : out) {
        if (g.empty()) g = {Rational(1)};
        Rational lc = g.back();
        for (auto& x : g) x /= lc;
    }
    return out;
}

namespace {

Integer pollard_rho(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        auto step = [&](const Integer& v) {
            Integer r = (v * v + c) % n;
            return r;
        };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            Integer diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void factor_into(const Integer& n, std::vector<Integer>& primes) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
        primes.push_back(n);
        return;
    }
    Integer d = pollard_rho(n);
    factor_into(d, primes);
    factor_into(n / d, primes);
}

}  // namespace

std::vector<Integer> divisors(const Integer& n) {
    if (n == 0) throw std::invalid_argument("divisors of zero");
    Integer m = abs(n);
    std::vector<Integer> primes;
    for (unsigned long p = 2; p < 10000 && Integer(p) * p <= m; ++p) {
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    factor_into(m, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<Integer> divs{1};
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        std::size_t base = divs.size();
        Integer pk = 1;
        for (std::size_t e = 0; e < j - i; ++e) {
            pk *= primes[i];
            for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * pk);
        }
        i = j;
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<std::pair<Rational, std::size_t>> upoly_rational_roots(const UPoly& p) {
    UPoly f = upoly_trim(p);
    std::vector<std::pair<Rational, std::size_t>> out;
    if (f.size() <= 1) return out;
    std::size_t zero_mult = 0;
    while (f.front() == 0) {
        f.erase(f.begin());
        ++zero_mult;
    }
    if (zero_mult) out.emplace_back(Rational(0), zero_mult);
    if (f.size() > 1) {
        // Candidates come from the squarefree part, cleared to a primitive
        // integer polynomial.
        UPoly g = upoly_divmod(f, upoly_gcd(f, upoly_derivative(f))).first;
        Integer l = 1;
        for (const auto& c : g) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        std::vector<Integer> z;
        for (const auto& c : g) z.push_back(Integer(c * l));
        auto lead = divisors(z.back());
        auto trail = divisors(z.front());
        std::vector<Rational> found;
        for (const auto& q : lead)
            for (const auto& d : trail) {
                Integer gg;
                mpz_gcd(gg.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
                if (gg != 1) continue;
                for (int sign : {1, -1}) {
                    Rational r = make_rational(Integer(sign) * d, q);
                    if (upoly_eval(g, r) == 0) found.push_back(r);
                }
            }
        for (const auto& r : found) {
            std::size_t m = 0;
            UPoly lin{-r, Rational(1)};
            UPoly cur = f;
            for (;;) {
                auto [qq, rr] = upoly_divmod(cur, lin);
                if (!rr.empty()) break;
                cur = qq;
                ++m;
            }
            out.emplace_back(r, m);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

UPoly char_poly(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
    std::size_t n = a.rows();
    UPoly c(n + 1, Rational(0));
    c[n] = 1;
    Matrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix next = a * m;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        m = std::move(next);
        Matrix am = a * m;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return c;
}

Spectrum rational_spectrum(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("spectrum of non-square matrix");
    std::size_t n = a.rows();
    Spectrum s;
    std::size_t alg = 0, geo = 0;
    for (const auto& [lambda, mult] : upoly_rational_roots(char_poly(a))) {
        Matrix shifted = a - lambda * Matrix::identity(n);
        Eigenvalue ev{lambda, mult, n - rank(shifted)};
        alg += ev.algebraic;
        geo += ev.geometric;
        s.eigenvalues.push_back(ev);
    }
    s.splits = alg == n;
    s.diagonalizable = s.splits && geo == n;
    return s;
}

}  // namespace nilforge
