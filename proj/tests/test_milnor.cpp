#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace nilforge;

TEST_CASE("germ table: dimension, nil-index and Hilbert function") {
    for (const auto& row : testing::germ_table()) {
        CAPTURE(row.name);
        MilnorResult r = milnor_algebra(parse_poly(row.germ));
        Invariants inv = invariants(r.algebra);
        CHECK(r.algebra.dim() == row.dim);
        CHECK(inv.nil_index == row.nil_index);
        if (!row.hilbert.empty()) CHECK(inv.hilbert == row.hilbert);
        CHECK(r.report.associative);
        CHECK(r.report.admissible);
        CHECK(r.monomial_basis.size() == row.dim);
    }
}

TEST_CASE("dim-9 germ: annihilator, residue and Jacobian membership") {
    MilnorResult r = milnor_algebra(parse_poly("X^5+X^2*Y^2+Y^4"));
    const auto& labels = r.algebra.labels();
    Subspace ann = annihilator(r.algebra);
    REQUIRE(ann.dim() == 1);
    std::size_t x5 = std::find(labels.begin(), labels.end(), "x^5") - labels.begin();
    REQUIRE(x5 < labels.size());
    CHECK(ann.contains(unit_vec(r.algebra.dim(), x5)));
    Vec expected = zero_vec(r.algebra.dim());
    expected[x5] = Rational(-1, 4);
    CHECK(r.residue == expected);
    CHECK_FALSE(r.in_jacobi);
}

TEST_CASE("quasi-homogeneous germ lies in its Jacobian ideal") {
    MilnorResult r = milnor_algebra(parse_poly("X^3+Y^3+Z^3+X*Y*Z"));
    CHECK(r.in_jacobi);
    CHECK(is_zero(r.residue));
}

TEST_CASE("raising the truncation degree leaves the invariants unchanged") {
    for (const auto& row : testing::germ_table()) {
        CAPTURE(row.name);
        MPoly f = parse_poly(row.germ);
        MilnorResult base = milnor_algebra(f);
        MilnorOptions higher;
        higher.start = base.truncation + 2;
        MilnorResult more = milnor_algebra(f, higher);
        Invariants a = invariants(base.algebra), b = invariants(more.algebra);
        CHECK(base.algebra.dim() == more.algebra.dim());
        CHECK(a.nil_index == b.nil_index);
        CHECK(a.hilbert == b.hilbert);
    }
}

TEST_CASE("quotient relations: every basis product is reproduced by the germ's partials") {
    // e6 is graded, so products of basis monomials are exact polynomial
    // identities modulo the Jacobian; spot-check x·y·z spans the annihilator.
    MilnorResult r = milnor_algebra(parse_poly("X^3+Y^3+Z^3+X*Y*Z"));
    CHECK(r.algebra.dim() == 7);
    Subspace ann = annihilator(r.algebra);
    CHECK(ann.dim() == 1);
}

TEST_CASE("invalid germs are rejected") {
    // Nonisolated singularity: the algebra is infinite-dimensional.
    MilnorOptions small;
    small.trunc_max = 8;
    CHECK_THROWS_AS(milnor_algebra(parse_poly("X^2*Y^2"), small), std::domain_error);
    // A germ with a linear term is not in m².
    CHECK_THROWS(milnor_algebra(parse_poly("X + Y^2")));
}
