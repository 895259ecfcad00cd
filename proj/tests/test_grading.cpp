#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilforge/grading.hpp"
#include "support.hpp"

using namespace nilforge;
using testing::load_poly;
using testing::milnor;

namespace {

Rational form(const Matrix& h, const Vec& x, const Vec& y) { return dot(x, h.apply(y)); }

bool orthogonal(const Matrix& h, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    for (const auto& x : a)
        for (const auto& y : b)
            if (form(h, x, y) != 0) return false;
    return true;
}

std::vector<Vec> concat(std::vector<Vec> a, const std::vector<Vec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

NilAlgebra reconstruct(const MPoly& p) {
    Reconstruction r = reconstruct_algebra(p.homogeneous_part(2), p.homogeneous_part(3));
    REQUIRE(r.accepted);
    return r.algebra;
}

}  // namespace

TEST_CASE("adapted decompositions satisfy the orthogonality and isotropy relations") {
    std::vector<std::pair<std::string, NilAlgebra>> algebras;
    for (const char* n : {"dim8", "dim9", "e6", "dim11"}) algebras.emplace_back(n, milnor(n));
    algebras.emplace_back("gr", reconstruct(load_poly("gr_e1_t2.json")));
    for (const auto& [name, a] : algebras) {
        CAPTURE(name);
        PointedSplit s = pointed_split(a, default_pointing(a));
        std::size_t m = s.w_basis.size();
        AdaptedDecomposition d = adapted_decomposition(s.ops, s.h);
        CHECK(d.e0.size() + d.e1.size() + d.e2.size() + d.e3.size() == m);
        CHECK(Subspace::span(m, concat(concat(d.e0, d.e1), concat(d.e2, d.e3))).dim() == m);
        CHECK(orthogonal(s.h, d.e0, concat(d.e1, d.e3)));
        CHECK(orthogonal(s.h, d.e0, d.e2));
        CHECK(orthogonal(s.h, concat(d.e1, d.e3), d.e2));
        CHECK(orthogonal(s.h, d.e1, d.e1));
        CHECK(orthogonal(s.h, d.e3, d.e3));
        // B = E2 ⊕ E3 is spanned by operator images, K = E0 ⊕ E3 is the common kernel.
        std::vector<Vec> images;
        for (const auto& op : s.ops)
            for (std::size_t j = 0; j < m; ++j) images.push_back(op.col(j));
        CHECK(Subspace::span(m, concat(d.e2, d.e3)) == Subspace::span(m, images));
        std::vector<Vec> rows;
        for (const auto& op : s.ops)
            for (std::size_t i = 0; i < m; ++i) rows.push_back(op.row(i));
        Subspace common = kernel(Matrix::from_rows(rows));
        CHECK(Subspace::span(m, concat(d.e0, d.e3)) == common);
    }
}

TEST_CASE("index-3 gradings are valid and their theta maps are automorphisms") {
    std::vector<NilAlgebra> algebras{milnor("e6"), reconstruct(load_poly("gh_t1.json")),
                                     reconstruct(load_poly("gh_t2.json")),
                                     family_degree3(parse_poly("x1^2*x2 - 2*x2^3 + x1*x2*x3")).reconstruction.algebra};
    for (const auto& a : algebras) {
        REQUIRE(invariants(a).nil_index <= 3);
        Grading g = grading_index3(a);
        GradingCheck c = verify_grading(a, g);
        CHECK(c.valid);
        CHECK(c.theta_automorphism);
        for (Rational t : {Rational(2), Rational(-1, 3)}) CHECK(is_homomorphism(a, a, theta(g, t)));
        CHECK(is_derivation(a, euler_derivation(g)));
        Pointing p = graded_pointing(a, g);
        CHECK_NOTHROW(check_pointing(a, p));
    }
}

TEST_CASE("weight components reassemble the element") {
    Degree4Family f = family_degree4(2, 1);
    const NilAlgebra& a = f.reconstruction.algebra;
    std::mt19937 rng(61);
    Vec x = testing::random_vec(rng, a.dim());
    auto parts = weight_components(f.grading, x, 4);
    Vec sum = zero_vec(a.dim());
    for (const auto& p : parts) sum = sum + p;
    CHECK(sum == x);
    // Products of homogeneous pieces land in the summed weight.
    for (unsigned i = 1; i <= 4; ++i)
        for (unsigned j = 1; i + j <= 4; ++j) {
            Vec prod = a.mul(parts[i], parts[j]);
            CHECK(weight_components(f.grading, prod, 4)[i + j] == prod);
        }
}

TEST_CASE("invalid gradings are rejected with a failing pair") {
    NilAlgebra a = milnor("e6");
    Grading g = grading_index3(a);
    std::swap(g.weights.front(), g.weights.back());
    GradingCheck c = verify_grading(a, g);
    CHECK_FALSE(c.valid);
    CHECK(c.failing_pair.has_value());
}

TEST_CASE("index-3 grading requires nil-index at most 3") {
    CHECK_THROWS_AS(grading_index3(milnor("dim8")), std::domain_error);
}

TEST_CASE("W coordinates round trip") {
    NilAlgebra a = milnor("dim9");
    PointedSplit s = pointed_split(a, default_pointing(a));
    std::mt19937 rng(62);
    Vec y = testing::random_vec(rng, s.w_basis.size());
    CHECK(to_w(s, from_w(s, y)) == y);
    CHECK(determinant(s.h) != 0);
}
