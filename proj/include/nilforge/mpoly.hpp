#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nilforge/matrix.hpp"
#include "nilforge/rational.hpp"

namespace nilforge {

using Monomial = std::vector<unsigned>;

unsigned total_degree(const Monomial& m);

/// Graded lexicographic order: total degree first, then the exponent of the
/// first variable, then the second, and so on.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

using VarList = std::vector<std::string>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Sparse polynomial over the rationals in a named variable context.
/// Invariants: no zero coefficients; every monomial has one exponent per variable.
class MPoly {
public:
    using Terms = std::map<Monomial, Rational, GrlexLess>;

    MPoly();
    explicit MPoly(VarList vars);
    explicit MPoly(std::shared_ptr<const VarList> vars);

    static MPoly constant(const MPoly& context, const Rational& c);
    static MPoly variable(const MPoly& context, std::size_t i);
    static MPoly variable(const VarList& vars, std::size_t i);
    static MPoly term(const MPoly& context, Monomial m, const Rational& c);

    const VarList& vars() const { return *vars_; }
    const std::shared_ptr<const VarList>& context() const { return vars_; }
    std::size_t nvars() const { return vars_->size(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// -1 for the zero polynomial.
    int degree() const;
    /// Lowest total degree among terms; -1 for zero.
    int low_degree() const;
    bool is_homogeneous() const;
    Rational coeff(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const Rational& s, const MPoly& p);
    MPoly pow(unsigned k) const;
    /// Multiply by a single monomial.
    MPoly shift(const Monomial& m, const Rational& c = Rational(1)) const;

    friend bool operator==(const MPoly& a, const MPoly& b);
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly derivative(std::size_t i) const;
    MPoly truncate_above(int d) const;
    MPoly truncate_below(int j) const;
    MPoly homogeneous_part(int k) const;
    Rational evaluate(const Vec& point) const;
    /// p(M·y) with M of size nvars × m; the result lives in `new_vars`
    /// (defaults to the current variables when M is square).
    MPoly substitute_linear(const Matrix& m, std::optional<VarList> new_vars = std::nullopt) const;
    /// Substitutes images[i] for variable i; images share one context.
    MPoly compose(const std::vector<MPoly>& images) const;
    /// Same polynomial in a context containing all current variable names.
    MPoly embed(const std::shared_ptr<const VarList>& target) const;

    std::string to_string() const;

private:
    MPoly adopt(const MPoly& other) const;

    std::shared_ptr<const VarList> vars_;
    Terms terms_;
};

bool same_context(const MPoly& a, const MPoly& b);

/// Parses the polynomial grammar. Without a context, variables are indexed
/// by first appearance; with one, unknown variables are a ParseError.
MPoly parse_poly(std::string_view text, std::optional<VarList> context = std::nullopt);

/// ω_k(v_1..v_k) of a homogeneous degree-k polynomial by inclusion–exclusion,
/// so that ω_k(x,..,x) = k!·p(x).
Rational polarize(const MPoly& pk, const std::vector<Vec>& vs);

/// k! as a rational.
Rational factorial(unsigned k);

/// Coordinates of a polynomial vector x·e over a basis: one MPoly per basis
/// element, all in one context.
using PolyVec = std::vector<MPoly>;

}  // namespace nilforge
