#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilforge/grading.hpp"
#include "support.hpp"

using namespace nilforge;
using testing::milnor;
using testing::random_vec;

namespace {

// First failing associativity triple found by brute force over the tensor.
std::optional<std::array<std::size_t, 3>> brute_force_triple(const NilAlgebra& a) {
    auto c = testing::structure_tensor(a);
    std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vec ei = unit_vec(n, i), ej = unit_vec(n, j), ek = unit_vec(n, k);
                if (testing::tensor_mul(c, testing::tensor_mul(c, ei, ej), ek) !=
                    testing::tensor_mul(c, ei, testing::tensor_mul(c, ej, ek)))
                    return std::array<std::size_t, 3>{i, j, k};
            }
    return std::nullopt;
}

// x·x = y, y·y = z: (x·x)·y = z but x·(x·y) = 0.
NilAlgebra non_associative() {
    NilAlgebra a({"x", "y", "z"});
    a.set_product(0, 0, Vec{0, 1, 0});
    a.set_product(1, 1, Vec{0, 0, 1});
    return a;
}

}  // namespace

TEST_CASE("Milnor algebras are associative, nilpotent and admissible") {
    for (const auto& name : testing::small_algebra_names()) {
        NilAlgebra a = milnor(name);
        AlgebraReport r = verify_algebra(a);
        CHECK(r.associative);
        CHECK_FALSE(brute_force_triple(a).has_value());
        CHECK(r.nilpotent);
        CHECK(r.admissible);
        CHECK(r.nil_index == testing::germ(name).nil_index);
    }
}

TEST_CASE("associativity failures are reported at the first triple") {
    NilAlgebra a = non_associative();
    AlgebraReport r = verify_algebra(a);
    auto expected = brute_force_triple(a);
    REQUIRE(expected.has_value());
    CHECK_FALSE(r.associative);
    REQUIRE(r.failing_triple.has_value());
    CHECK(*r.failing_triple == *expected);
}

TEST_CASE("exp and log are mutually inverse on the dim-9 fixture") {
    NilAlgebra a = milnor("dim9");
    std::mt19937 rng(31);
    for (int t = 0; t < 20; ++t) {
        Vec x = random_vec(rng, a.dim());
        CHECK(log1(a, exp1(a, x)) == x);
        CHECK(exp1(a, log1(a, x)) == x);
    }
}

TEST_CASE("power and socle chains match the dense oracle and satisfy the dimension identity") {
    for (const auto& name : testing::all_algebra_names()) {
        CAPTURE(name);
        NilAlgebra a = milnor(name);
        Invariants inv = invariants(a);
        std::size_t nu = inv.nil_index;
        auto pw = testing::oracle_powers(a, nu + 1);
        REQUIRE(inv.powers.size() >= nu + 1);
        for (std::size_t k = 1; k <= nu + 1; ++k) {
            CHECK(inv.powers[k - 1].dim() == testing::dense_rank(pw[k - 1]));
            std::size_t socle = testing::oracle_socle_dim(a, pw[k - 1]);
            CHECK(inv.socles[k].dim() == socle);
            // dim N_[k] + dim N^k = dim N + 1 for admissible algebras.
            if (k <= nu) CHECK(socle + testing::dense_rank(pw[k - 1]) == a.dim() + 1);
        }
        CHECK(inv.admissible);
        const auto& row = testing::germ(name);
        CHECK(a.dim() == row.dim);
        CHECK(nu == row.nil_index);
        if (!row.hilbert.empty()) CHECK(inv.hilbert == row.hilbert);
    }
}

TEST_CASE("derivation dimension agrees with the dense oracle and each basis element is a derivation") {
    for (const auto& name : testing::small_algebra_names()) {
        CAPTURE(name);
        NilAlgebra a = milnor(name);
        DerivationResult d = derivation_algebra(a);
        CHECK(d.dim() == testing::oracle_derivation_dim(a));
        for (const auto& m : d.basis) CHECK(is_derivation(a, m));
    }
}

TEST_CASE("derivation lower bounds hold on every fixture") {
    for (const auto& name : testing::all_algebra_names()) {
        CAPTURE(name);
        NilAlgebra a = milnor(name);
        std::size_t dd = derivation_algebra(a).dim();
        DerivationBounds b = derivation_bounds(a, dd);
        CHECK(b.ty_holds);
        CHECK(b.quartic_holds);
        CHECK(dd >= b.ty_bound);
        auto pw = testing::oracle_powers(a, 4);
        CHECK(dd >= a.dim() - testing::dense_rank(pw[3]));
        CHECK(b.quartic_bound == a.dim() - testing::dense_rank(pw[3]));
    }
}

TEST_CASE("derivation dimension of the dim-23 algebra") {
    // Stated value for the automorphism group of this algebra.
    CHECK(derivation_algebra(milnor("dim23")).dim() == 42);
}

TEST_CASE("derivation dimensions of the remaining non-homogeneous fixtures") {
    // Exact values computed here and confirmed by an independent Groebner
    // normal-form computation; they differ from the published 25, 20, 23
    // (see README, known discrepancies).
    CHECK(derivation_algebra(milnor("dim17")).dim() == 23);
    CHECK(derivation_algebra(milnor("dim15a")).dim() == 19);
    CHECK(derivation_algebra(milnor("dim15b")).dim() == 21);
}

TEST_CASE("pointings, projections and the unit annihilator") {
    for (const auto& name : testing::small_algebra_names()) {
        NilAlgebra a = milnor(name);
        Pointing p = default_pointing(a);
        Vec u = unit_annihilator(a, p);
        CHECK(dot(p.omega, u) == 1);
        CHECK(annihilator(a).contains(u));
        Matrix pi = projection(a, p);
        CHECK(pi * pi == pi);
        auto kb = kernel_basis(p);
        CHECK(kb.size() == a.dim() - 1);
        for (const auto& k : kb) CHECK(dot(p.omega, k) == 0);
        Pointing bad{zero_vec(a.dim())};
        CHECK_THROWS_AS(check_pointing(a, bad), std::domain_error);
    }
}

TEST_CASE("derivation shifts satisfy the tangency identity") {
    NilAlgebra a = milnor("dim8");
    Pointing p = default_pointing(a);
    DerivationResult d = derivation_algebra(a);
    for (const auto& m : d.basis) {
        Vec v = derivation_shift(a, p, m);
        CHECK(tangency_identity(a, p, m, v));
    }
}

TEST_CASE("smash product is admissible with the expected dimension and nil-index") {
    NilAlgebra a = milnor("e6"), b = milnor("dim8");
    PointedAlgebra s = smash_product({a, default_pointing(a)}, {b, default_pointing(b)});
    CHECK(s.algebra.dim() == a.dim() + b.dim() - 1);
    AlgebraReport r = verify_algebra(s.algebra);
    CHECK(r.associative);
    CHECK(r.admissible);
    CHECK(r.nil_index == std::max(verify_algebra(a).nil_index, verify_algebra(b).nil_index));
    CHECK_NOTHROW(check_pointing(s.algebra, s.pointing));
}

TEST_CASE("associated graded algebra keeps dimension and Hilbert function") {
    NilAlgebra a = milnor("dim9");
    std::vector<unsigned> w;
    NilAlgebra g = associated_graded(a, &w);
    CHECK(g.dim() == a.dim());
    CHECK(invariants(g).hilbert == invariants(a).hilbert);
    CHECK(verify_algebra(g).associative);
}

TEST_CASE("homomorphism check accepts the identity and rejects scalings") {
    NilAlgebra a = milnor("e6");
    CHECK(is_homomorphism(a, a, Matrix::identity(a.dim())));
    CHECK_FALSE(is_homomorphism(a, a, Rational(2) * Matrix::identity(a.dim())));
}
