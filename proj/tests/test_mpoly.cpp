#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilforge/mpoly.hpp"
#include "support.hpp"

using namespace nilforge;
using testing::random_rational;
using testing::random_vec;

namespace {

MPoly random_poly(std::mt19937& rng, const VarList& vars, unsigned max_deg, int terms) {
    MPoly p(vars);
    std::uniform_int_distribution<unsigned> e(0, max_deg);
    for (int t = 0; t < terms; ++t) {
        Monomial m(vars.size());
        unsigned budget = max_deg;
        for (auto& x : m) {
            x = std::min(budget, e(rng) % (max_deg + 1));
            budget -= x;
        }
        p.add_term(m, random_rational(rng));
    }
    return p;
}

MPoly random_form(std::mt19937& rng, const VarList& vars, unsigned k, int terms) {
    MPoly p = random_poly(rng, vars, k, terms * 3).homogeneous_part(static_cast<int>(k));
    if (p.is_zero()) p = MPoly::variable(vars, 0).pow(k);
    return p;
}

// ω_k from the symmetric coefficient tensor: the coefficient of x^α is spread
// evenly over the k!/α! index tuples of type α.
Rational tensor_polarization(const MPoly& pk, const std::vector<Vec>& vs) {
    std::size_t n = pk.nvars(), k = vs.size();
    Rational total = 0;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        Monomial alpha(n, 0);
        for (auto i : idx) ++alpha[i];
        Rational c = pk.coeff(alpha);
        if (c != 0) {
            Rational multinomial = factorial(static_cast<unsigned>(k));
            for (auto a : alpha) multinomial /= factorial(a);
            Rational prod = c / multinomial;
            for (std::size_t j = 0; j < k; ++j) prod *= vs[j][idx[j]];
            total += prod;
        }
        std::size_t pos = 0;
        while (pos < k && ++idx[pos] == n) idx[pos++] = 0;
        if (pos == k) break;
    }
    return factorial(static_cast<unsigned>(k)) * total;
}

}  // namespace

TEST_CASE("printing and parsing round trip") {
    std::mt19937 rng(21);
    VarList vars{"x1", "x2", "y", "Z"};
    for (int t = 0; t < 30; ++t) {
        MPoly p = random_poly(rng, vars, 5, 8);
        CHECK(parse_poly(p.to_string(), vars) == p);
    }
    CHECK(parse_poly("0", vars).is_zero());
    MPoly q = parse_poly("X^5+X^2*Y^2+Y^4");
    CHECK(q.vars() == VarList{"X", "Y"});
    CHECK(q.size() == 3);
    CHECK(parse_poly("-x^2 + 4*x - 1 + 3/6*x", VarList{"x"}) == parse_poly("-1 + 9/2*x - x^2", VarList{"x"}));
    CHECK(parse_poly("2*x*y^2*x", VarList{"x", "y"}) == parse_poly("2*x^2*y^2", VarList{"x", "y"}));
}

TEST_CASE("malformed polynomials are rejected with a position") {
    CHECK_THROWS_AS(parse_poly("X^^2"), ParseError);
    CHECK_THROWS_AS(parse_poly("x + w", VarList{"x"}), ParseError);
    CHECK_THROWS_AS(parse_poly("(x+1)"), ParseError);
    CHECK_THROWS_AS(parse_poly("x +"), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0*x"), ParseError);
}

TEST_CASE("ring laws and evaluation homomorphism on random polynomials") {
    std::mt19937 rng(22);
    VarList vars{"a", "b", "c"};
    for (int t = 0; t < 20; ++t) {
        MPoly p = random_poly(rng, vars, 3, 5), q = random_poly(rng, vars, 3, 5), r = random_poly(rng, vars, 2, 4);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        CHECK((p - p).is_zero());
        Vec x = random_vec(rng, 3);
        CHECK((p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x));
        CHECK((p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x));
        // Leibniz rule.
        for (std::size_t i = 0; i < 3; ++i) CHECK((p * q).derivative(i) == p.derivative(i) * q + p * q.derivative(i));
        // Homogeneous parts reassemble the polynomial.
        MPoly sum(vars);
        for (int k = 0; k <= p.degree(); ++k) sum += p.homogeneous_part(k);
        CHECK(sum == p);
    }
}

TEST_CASE("linear substitution agrees with evaluation at transformed points") {
    std::mt19937 rng(23);
    VarList vars{"x", "y", "z"};
    for (int t = 0; t < 10; ++t) {
        MPoly p = random_poly(rng, vars, 4, 6);
        Matrix m(3, 2);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = random_rational(rng);
        MPoly s = p.substitute_linear(m, VarList{"u", "v"});
        Vec y = random_vec(rng, 2);
        CHECK(s.evaluate(y) == p.evaluate(m.apply(y)));
        std::vector<MPoly> images;
        VarList uv{"u", "v"};
        for (std::size_t i = 0; i < 3; ++i) images.push_back(m(i, 0) * MPoly::variable(uv, 0) + m(i, 1) * MPoly::variable(uv, 1));
        CHECK(p.compose(images) == s);
    }
}

TEST_CASE("polarization matches the coefficient tensor on random cubics and quartics") {
    std::mt19937 rng(24);
    VarList vars{"x1", "x2", "x3", "x4"};
    for (unsigned k : {3u, 4u}) {
        for (int t = 0; t < 15; ++t) {
            MPoly pk = random_form(rng, vars, k, 6);
            std::vector<Vec> vs;
            for (unsigned j = 0; j < k; ++j) vs.push_back(random_vec(rng, 4));
            CHECK(polarize(pk, vs) == tensor_polarization(pk, vs));
            // Diagonal: ω_k(x, .., x) = k!·p(x).
            std::vector<Vec> diag(k, vs[0]);
            CHECK(polarize(pk, diag) == factorial(k) * pk.evaluate(vs[0]));
        }
    }
}

TEST_CASE("embedding into a larger context keeps values") {
    MPoly p = parse_poly("x^2*y - 3*y", VarList{"x", "y"});
    auto big = std::make_shared<const VarList>(VarList{"w", "y", "x"});
    MPoly e = p.embed(big);
    CHECK(e.vars() == *big);
    CHECK(e.evaluate(Vec{5, 2, 3}) == p.evaluate(Vec{3, 2}));
}
