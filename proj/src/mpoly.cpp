#include "nilforge/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace nilforge {

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

const std::shared_ptr<const VarList>& empty_context() {
    static const auto ctx = std::make_shared<const VarList>();
    return ctx;
}

}  // namespace

MPoly::MPoly() : vars_(empty_context()) {}
MPoly::MPoly(VarList vars) : vars_(std::make_shared<const VarList>(std::move(vars))) {}
MPoly::MPoly(std::shared_ptr<const VarList> vars) : vars_(std::move(vars)) {}

MPoly MPoly::constant(const MPoly& context, const Rational& c) {
    MPoly p(context.vars_);
    p.add_term(Monomial(context.nvars(), 0), c);
    return p;
}

MPoly MPoly::variable(const MPoly& context, std::size_t i) {
    if (i >= context.nvars()) throw std::out_of_range("variable index out of range");
    Monomial m(context.nvars(), 0);
    m[i] = 1;
    MPoly p(context.vars_);
    p.add_term(m, Rational(1));
    return p;
}

MPoly MPoly::variable(const VarList& vars, std::size_t i) { return variable(MPoly(vars), i); }

MPoly MPoly::term(const MPoly& context, Monomial m, const Rational& c) {
    MPoly p(context.vars_);
    p.add_term(m, c);
    return p;
}

bool same_context(const MPoly& a, const MPoly& b) {
    return a.context() == b.context() || a.vars() == b.vars();
}

bool MPoly::is_constant() const { return degree() <= 0; }

int MPoly::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
}

int MPoly::low_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.begin()->first));
}

bool MPoly::is_homogeneous() const { return degree() == low_degree(); }

Rational MPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
    if (m.size() != nvars()) throw std::invalid_argument("monomial length does not match variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MPoly MPoly::adopt(const MPoly& other) const {
    // Re-express a constant polynomial in other's context.
    MPoly out(other.vars_);
    if (!terms_.empty()) out.add_term(Monomial(other.nvars(), 0), terms_.begin()->second);
    return out;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    if (!same_context(*this, o)) {
        if (o.is_constant()) return *this += o.adopt(*this);
        if (is_constant()) {
            *this = adopt(o);
            return *this += o;
        }
        throw std::invalid_argument("variable-context mismatch");
    }
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (!same_context(a, b)) {
        if (b.is_constant()) return a * b.adopt(a);
        if (a.is_constant()) return a.adopt(b) * b;
        throw std::invalid_argument("variable-context mismatch");
    }
    MPoly r(a.vars_);
    Monomial m(a.nvars());
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

MPoly operator*(const Rational& s, const MPoly& p) {
    MPoly r(p.vars_);
    if (s == 0) return r;
    for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, s * c);
    return r;
}

MPoly MPoly::pow(unsigned k) const {
    MPoly r = constant(*this, Rational(1));
    MPoly base = *this;
    while (k) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

MPoly MPoly::shift(const Monomial& m, const Rational& c) const {
    if (m.size() != nvars()) throw std::invalid_argument("monomial length does not match variable count");
    MPoly r(vars_);
    if (c == 0) return r;
    Monomial t(nvars());
    for (const auto& [mm, cc] : terms_) {
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = mm[i] + m[i];
        r.terms_.emplace_hint(r.terms_.end(), t, c * cc);
    }
    return r;
}

bool operator==(const MPoly& a, const MPoly& b) {
    if (same_context(a, b)) return a.terms_ == b.terms_;
    if (a.is_constant() && b.is_constant()) return a.adopt(b).terms_ == b.terms_;
    return false;
}

MPoly MPoly::derivative(std::size_t i) const {
    if (i >= nvars()) throw std::out_of_range("derivative index out of range");
    MPoly r(vars_);
    for (const auto& [m, c] : terms_) {
        if (m[i] == 0) continue;
        Monomial d = m;
        --d[i];
        r.add_term(d, c * Rational(static_cast<long>(m[i])));
    }
    return r;
}

MPoly MPoly::truncate_above(int d) const {
    MPoly r(vars_);
    for (const auto& [m, c] : terms_)
        if (static_cast<int>(total_degree(m)) <= d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

MPoly MPoly::truncate_below(int j) const {
    MPoly r(vars_);
    for (const auto& [m, c] : terms_)
        if (static_cast<int>(total_degree(m)) >= j) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

MPoly MPoly::homogeneous_part(int k) const {
    MPoly r(vars_);
    for (const auto& [m, c] : terms_)
        if (static_cast<int>(total_degree(m)) == k) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

Rational MPoly::evaluate(const Vec& point) const {
    if (point.size() != nvars()) throw std::invalid_argument("evaluation point length mismatch");
    Rational s = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.size() && t != 0; ++i)
            for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
        s += t;
    }
    return s;
}

MPoly MPoly::compose(const std::vector<MPoly>& images) const {
    if (images.size() != nvars()) throw std::invalid_argument("substitution needs one image per variable");
    if (images.empty()) return *this;
    MPoly ctx(images.front().vars_);
    for (const auto& im : images)
        if (!same_context(im, ctx)) throw std::invalid_argument("substitution images use different contexts");
    std::vector<std::vector<MPoly>> powers(nvars());
    auto power = [&](std::size_t i, unsigned e) -> const MPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(ctx, Rational(1)));
        while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
        return cache[e];
    };
    MPoly r(ctx.vars_);
    for (const auto& [m, c] : terms_) {
        MPoly t = constant(ctx, c);
        for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i)
            if (m[i]) t = t * power(i, m[i]);
        r += t;
    }
    return r;
}

MPoly MPoly::substitute_linear(const Matrix& m, std::optional<VarList> new_vars) const {
    if (m.rows() != nvars()) throw std::invalid_argument("substitution matrix row count must equal variable count");
    std::shared_ptr<const VarList> ctx;
    if (new_vars) {
        if (new_vars->size() != m.cols()) throw std::invalid_argument("new variable list does not match matrix columns");
        ctx = std::make_shared<const VarList>(std::move(*new_vars));
    } else {
        if (m.cols() != nvars()) throw std::invalid_argument("non-square substitution needs new variable names");
        ctx = vars_;
    }
    MPoly base(ctx);
    std::vector<MPoly> images;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        MPoly im(ctx);
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) im += m(i, j) * variable(base, j);
        images.push_back(std::move(im));
    }
    if (images.empty()) return constant(base, coeff(Monomial{}));
    return compose(images);
}

MPoly MPoly::embed(const std::shared_ptr<const VarList>& target) const {
    std::vector<std::size_t> where(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) {
        auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
        if (it == target->end()) throw std::invalid_argument("variable '" + (*vars_)[i] + "' missing from target context");
        where[i] = static_cast<std::size_t>(it - target->begin());
    }
    MPoly r(target);
    for (const auto& [m, c] : terms_) {
        Monomial t(target->size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) t[where[i]] = m[i];
        r.add_term(t, c);
    }
    return r;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c < 0;
        Rational a = abs(c);
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (!mono.empty()) mono += '*';
            mono += (*vars_)[i];
            if (m[i] > 1) mono += '^' + std::to_string(m[i]);
        }
        if (mono.empty())
            out << nilforge::to_string(a);
        else if (a == 1)
            out << mono;
        else
            out << nilforge::to_string(a) << '*' << mono;
    }
    return out.str();
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::optional<VarList> ctx) : s_(text), fixed_(ctx.has_value()) {
        if (ctx) vars_ = std::move(*ctx);
    }

    MPoly run() {
        skip();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++i_;
        }
        term(neg);
        for (;;) {
            skip();
            if (i_ == s_.size()) break;
            char c = s_[i_];
            if (c != '+' && c != '-') throw ParseError("expected '+' or '-'", i_);
            ++i_;
            term(c == '-');
        }
        MPoly p(vars_);
        for (auto& [exps, c] : raw_) {
            Monomial m(vars_.size(), 0);
            for (auto [v, e] : exps) m[v] += e;
            p.add_term(m, c);
        }
        return p;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }

    Integer integer() {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) throw ParseError("expected integer", start);
        return Integer(std::string(s_.substr(start, i_ - start)));
    }

    void term(bool neg) {
        Rational coeff = 1;
        std::vector<std::pair<std::size_t, unsigned>> exps;
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = integer();
            Integer den = 1;
            if (peek() == '/') {
                ++i_;
                std::size_t at = i_;
                den = integer();
                if (den == 0) throw ParseError("zero denominator", at);
            }
            coeff = make_rational(num, den);
            if (peek() == '*') {
                ++i_;
                monom(exps);
            }
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            monom(exps);
        } else {
            throw ParseError("expected coefficient or variable", i_);
        }
        raw_.emplace_back(std::move(exps), neg ? Rational(-coeff) : coeff);
    }

    void monom(std::vector<std::pair<std::size_t, unsigned>>& exps) {
        for (;;) {
            std::size_t v = var();
            unsigned e = 1;
            if (peek() == '^') {
                ++i_;
                std::size_t at = i_;
                Integer n = integer();
                if (!n.fits_uint_p()) throw ParseError("exponent too large", at);
                e = static_cast<unsigned>(n.get_ui());
            }
            exps.emplace_back(v, e);
            if (peek() != '*') break;
            ++i_;
        }
    }

    std::size_t var() {
        skip();
        std::size_t start = i_;
        if (i_ == s_.size() || !std::isalpha(static_cast<unsigned char>(s_[i_])))
            throw ParseError("expected variable", start);
        ++i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        std::string name(s_.substr(start, i_ - start));
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it != vars_.end()) return static_cast<std::size_t>(it - vars_.begin());
        if (fixed_) throw ParseError("unknown variable '" + name + "'", start);
        vars_.push_back(name);
        return vars_.size() - 1;
    }

    std::string_view s_;
    std::size_t i_ = 0;
    bool fixed_;
    VarList vars_;
    std::vector<std::pair<std::vector<std::pair<std::size_t, unsigned>>, Rational>> raw_;
};

}  // namespace

MPoly parse_poly(std::string_view text, std::optional<VarList> context) {
    return Parser(text, std::move(context)).run();
}

Rational factorial(unsigned k) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return Rational(f);
}

Rational polarize(const MPoly& pk, const std::vector<Vec>& vs) {
    std::size_t k = vs.size();
    if (!pk.is_zero() && (!pk.is_homogeneous() || pk.degree() != static_cast<int>(k)))
        throw std::invalid_argument("polarization needs a homogeneous polynomial of degree k");
    for (const auto& v : vs)
        if (v.size() != pk.nvars()) throw std::invalid_argument("polarization argument length mismatch");
    if (k > 20) throw std::invalid_argument("polarization degree too large");
    Rational total = 0;
    Vec point(pk.nvars());
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        std::fill(point.begin(), point.end(), Rational(0));
        std::size_t bits = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) {
                point = point + vs[i];
                ++bits;
            }
        Rational val = pk.evaluate(point);
        if ((k - bits) % 2)
            total -= val;
        else
            total += val;
    }
    // The empty subset contributes p(0) = 0 for k >= 1.
    return total;
}

}  // namespace nilforge
