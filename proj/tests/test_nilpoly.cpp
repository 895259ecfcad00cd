#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilforge/grading.hpp"
#include "nilforge/homogeneity.hpp"
#include "support.hpp"

using namespace nilforge;
using testing::load_poly;
using testing::milnor;
using testing::random_vec;

namespace {

Vec combine(const std::vector<Vec>& basis, const Vec& coeffs) {
    Vec x = zero_vec(basis.empty() ? 0 : basis[0].size());
    for (std::size_t i = 0; i < basis.size(); ++i) x = x + coeffs[i] * basis[i];
    return x;
}

bool parts_equal(const MPoly& a, const MPoly& b) {
    int d = std::max(a.degree(), b.degree());
    for (int k = 0; k <= d; ++k)
        if (a.homogeneous_part(k) != b.homogeneous_part(k)) return false;
    return true;
}

MPoly regenerate(const MPoly& p) { return regenerate_from_2_3(p.homogeneous_part(2), p.homogeneous_part(3)); }

NilAlgebra reconstruct(const MPoly& p) {
    Reconstruction r = reconstruct_algebra(p.homogeneous_part(2), p.homogeneous_part(3));
    REQUIRE(r.accepted);
    return r.algebra;
}

// Expand a factor profile back into a binary form (x = var 0, y = var 1).
MPoly expand_profile(const FactorProfile& fp, const VarList& vars) {
    MPoly x = MPoly::variable(vars, 0), y = MPoly::variable(vars, 1);
    MPoly out = MPoly::constant(x, 1);
    for (const auto& l : fp.linear) out = out * (l.a * x + l.b * y).pow(static_cast<unsigned>(l.multiplicity));
    for (const auto& q : fp.quadratic)
        out = out * (q.coeffs[0] * x * x + q.coeffs[1] * x * y + q.coeffs[2] * y * y).pow(static_cast<unsigned>(q.multiplicity));
    return out;
}

// Whether a = λ·b for some rational λ.
bool proportional(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    const auto& [m, c] = *b.terms().begin();
    Rational lambda = a.coeff(m) / c;
    return lambda != 0 && a == lambda * b;
}

}  // namespace

TEST_CASE("extracted nil-polynomials match the algebra pointwise") {
    std::mt19937 rng(41);
    for (const auto& name : testing::all_algebra_names()) {
        CAPTURE(name);
        NilAlgebra a = milnor(name);
        NilPolynomial np = nil_polynomial(a);
        CHECK_NOTHROW(check_nil_polynomial(np.p));
        CHECK(np.p.nvars() == a.dim() - 1);
        CHECK(np.p.degree() == static_cast<int>(testing::germ(name).nil_index));
        for (int t = 0; t < 3; ++t) {
            Vec c = random_vec(rng, np.nvars(), 3, 2);
            Vec x = combine(np.w_basis, c);
            CHECK(np.p.evaluate(c) == testing::oracle_hypersurface_value(a, *np.pointing, x));
        }
    }
}

TEST_CASE("reconstruction from the quadratic and cubic parts is isomorphic to the source") {
    for (const auto& name : testing::all_algebra_names()) {
        CAPTURE(name);
        NilAlgebra a = milnor(name);
        NilPolynomial np = nil_polynomial(a);
        CHECK(reconstruction_isomorphism_holds(a, np));
        CHECK(regenerate(np.p) == np.p);
    }
}

TEST_CASE("dim-9 fixture polynomial and the extracted one share all invariants") {
    MPoly uv = load_poly("uv.json");
    NilPolynomial extracted = nil_polynomial(milnor("dim9"));
    for (const MPoly* p : {&uv, &extracted.p}) {
        CHECK_NOTHROW(check_nil_polynomial(*p));
        CHECK(p->nvars() == 8);
        CHECK(p->degree() == 5);
        NilAlgebra r = reconstruct(*p);
        Invariants inv = invariants(r);
        CHECK(r.dim() == 9);
        CHECK(inv.nil_index == 5);
        CHECK(inv.hilbert == invariants(milnor("dim9")).hilbert);
        CHECK(derivation_algebra(r).dim() == derivation_algebra(milnor("dim9")).dim());
    }
}

TEST_CASE("regeneration reproduces the fixture polynomials in every degree") {
    for (const char* f : {"uv.json", "sr.json", "dim8.json", "gh_t1.json", "gr_e1_t2.json"}) {
        CAPTURE(f);
        MPoly p = load_poly(f);
        MPoly r = regenerate(p);
        CHECK(parts_equal(r, p));
        CHECK(r == p);
    }
}

TEST_CASE("reconstructed fixture algebras have the stated invariants") {
    Invariants sr = invariants(reconstruct(load_poly("sr.json")));
    CHECK(sr.hilbert == std::vector<std::size_t>{1, 4, 7, 7, 4, 1});
    CHECK(sr.hilbert_symmetric);
    Invariants d8 = invariants(reconstruct(load_poly("dim8.json")));
    CHECK(d8.hilbert == std::vector<std::size_t>{1, 3, 3, 1, 1});
    CHECK_FALSE(d8.hilbert_symmetric);
}

TEST_CASE("shifted pointings translate the hypersurface") {
    std::mt19937 rng(42);
    for (const char* name : {"dim8", "dim9", "e6"}) {
        CAPTURE(name);
        NilAlgebra a = milnor(name);
        Pointing p = default_pointing(a);
        Vec s = point_on_hypersurface(a, p, random_vec(rng, a.dim() - 1, 4, 3));
        Pointing rho = shift_pointing(a, p, s);
        CHECK(shift_duality_holds(a, p, rho, s));
        for (int t = 0; t < 3; ++t) {
            Vec x = random_vec(rng, a.dim(), 4, 3);
            CHECK(testing::oracle_hypersurface_value(a, rho, x) == testing::oracle_hypersurface_value(a, p, x + s));
        }
        Vec off = s;
        off[pointing_index(p)] += 1;
        CHECK_THROWS_AS(shift_pointing(a, p, off), std::domain_error);
    }
}

TEST_CASE("the group law on exp-coordinates is vector addition") {
    std::mt19937 rng(43);
    NilAlgebra a = milnor("dim9");
    for (int t = 0; t < 5; ++t) {
        Vec s = random_vec(rng, a.dim()), u = random_vec(rng, a.dim());
        CHECK(group_law(a, s, u) == s + u);
        CHECK(group_law(a, s, zero_vec(a.dim())) == s);
    }
}

TEST_CASE("smash product polynomial is the direct sum of the factors' polynomials") {
    NilAlgebra a = milnor("e6"), b = milnor("dim8");
    Pointing pa = default_pointing(a), pb = default_pointing(b);
    PointedAlgebra s = smash_product({a, pa}, {b, pb});
    std::size_t na = a.dim(), nb = b.dim();

    // Embedding of B into the smash product: the coordinate j0 where B's
    // annihilator generator is last nonzero is rewritten through the
    // identification (0, t) ~ (ω_B(t)·u_A, 0).
    Vec bann = annihilator_generator(b);
    std::size_t j0 = nb;
    for (std::size_t j = 0; j < nb; ++j)
        if (bann[j] != 0) j0 = j;
    REQUIRE(j0 < nb);
    Vec ua = unit_annihilator(a, pa);
    auto embed_b = [&](const Vec& w) {
        Vec out = zero_vec(s.algebra.dim());
        auto place = [&](std::size_t j, const Rational& c) {
            if (c == 0) return;
            if (j != j0) {
                out[na + (j < j0 ? j : j - 1)] += c;
                return;
            }
            // e_j0 = (b_ann − Σ_{j≠j0} b_j e_j) / b_j0
            Rational k = c / bann[j0];
            for (std::size_t i = 0; i < na; ++i) out[i] += k * dot(pb.omega, bann) * ua[i];
            for (std::size_t jj = 0; jj < nb; ++jj)
                if (jj != j0 && bann[jj] != 0) out[na + (jj < j0 ? jj : jj - 1)] -= k * bann[jj];
        };
        for (std::size_t j = 0; j < nb; ++j) place(j, w[j]);
        return out;
    };

    // The embedding is an algebra homomorphism modulo the identification.
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < nb; ++j) cols.push_back(embed_b(unit_vec(nb, j)));
    CHECK(is_homomorphism(b, s.algebra, Matrix::from_columns(cols, s.algebra.dim())));

    VarList xa = standard_vars(na - 1, "x"), yb = standard_vars(nb - 1, "y");
    MPoly p_a = nil_polynomial(a, pa, kernel_basis(pa), xa).p;
    MPoly p_b = nil_polynomial(b, pb, kernel_basis(pb), yb).p;

    std::vector<Vec> w;
    VarList vars = xa;
    for (const auto& k : kernel_basis(pa)) {
        Vec v = zero_vec(s.algebra.dim());
        for (std::size_t i = 0; i < na; ++i) v[i] = k[i];
        w.push_back(v);
    }
    for (const auto& k : kernel_basis(pb)) w.push_back(embed_b(k));
    vars.insert(vars.end(), yb.begin(), yb.end());
    MPoly p_s = nil_polynomial(s.algebra, s.pointing, w, vars).p;

    auto ctx = p_s.context();
    CHECK(p_s == p_a.embed(ctx) + p_b.embed(ctx));
}

TEST_CASE("degree-4 family: theta symmetry, regeneration and the quartic invariant") {
    struct Case {
        Rational eps, t;
        const char* fixture;
    };
    for (const auto& c : {Case{1, 1, "gr_e1_t1.json"}, Case{1, 2, "gr_e1_t2.json"}, Case{-1, 1, "gr_em1_t1.json"}}) {
        CAPTURE(c.fixture);
        Degree4Family f = family_degree4(c.t, c.eps);
        CHECK(f.theta_symmetric);
        CHECK(f.reconstruction.accepted);
        CHECK(f.regenerated_matches);
        CHECK(f.p == load_poly(c.fixture));
        // Invariants of a0x⁴ + 6a2x²y² + a4y⁴ written out directly.
        Rational a0 = f.d.coeff({4, 0, 0, 0, 0, 0, 0}), a2 = f.d.coeff({2, 2, 0, 0, 0, 0, 0}) / 6,
                 a4 = f.d.coeff({0, 4, 0, 0, 0, 0, 0});
        Rational g2 = a0 * a4 + 3 * a2 * a2, g3 = a0 * a2 * a4 - a2 * a2 * a2;
        CHECK(f.invariants.g2 == g2);
        CHECK(f.invariants.g3 == g3);
        Rational u = c.t * c.t / c.eps;
        Rational stated = c.eps * c.eps / (c.t * c.t * c.t * c.t) * (4 + u) * (4 + u) * (4 + u);
        REQUIRE(f.invariants.phi.has_value());
        CHECK(*f.invariants.phi == stated);
        CHECK(*f.phi_closed_form == stated);
        CHECK(verify_grading(f.reconstruction.algebra, f.grading).valid);
    }
}

TEST_CASE("theta symmetry rejects an asymmetric cubic") {
    VarList vars{"x1", "x2", "y1", "y2", "y3"};
    MPoly c = parse_poly("x1*x2*y1 + 1/2*x1^2*y2", vars);
    CHECK_FALSE(theta_symmetric(c, 2, 3, {1, 1, 1}));
}

TEST_CASE("cubic-family fixtures equal the parametrized family and the scaling witness holds") {
    CHECK(load_poly("gh_t1.json") == hesse_family(1));
    CHECK(load_poly("gh_t2.json") == hesse_family(2));
    for (Rational t : {Rational(1), Rational(2), Rational(-3), Rational(5, 7)}) {
        CAPTURE(to_string(t));
        MPoly p = hesse_family(t);
        EquivalenceWitness w = hesse_family_witness(t);
        Rational s = -18 / t;
        VarList v6 = standard_vars(6);
        MPoly target = parse_poly("x1^3 + x2^3 + x3^3 + x1*x4 + x2*x5 + x3*x6", v6) + s * parse_poly("x1*x2*x3", v6);
        CHECK(apply_witness(p, w) == target);
        CHECK(equivalence_witness_check(p, target, w));
        CHECK_FALSE(equivalence_witness_check(p, p + MPoly::variable(p.vars(), 0).pow(3), w));
        Reconstruction r = reconstruct_algebra(p.homogeneous_part(2), p.homogeneous_part(3));
        CHECK(r.accepted);
        CHECK(invariants(r.algebra).nil_index == 3);
    }
    CHECK_THROWS_AS(hesse_family_witness(0), std::domain_error);
}

TEST_CASE("degree-3 families are accepted, reduced and graded") {
    for (const char* cubic : {"x1^3 + x2^3", "x1^2*x2 - 2*x2^3 + x1*x2*x3", "x1^3"}) {
        CAPTURE(cubic);
        FamilyResult f = family_degree3(parse_poly(cubic));
        CHECK(f.reconstruction.accepted);
        REQUIRE(f.grading.has_value());
        CHECK(verify_grading(f.reconstruction.algebra, *f.grading).valid);
        CHECK(regenerate(f.poly.p) == f.poly.p);
    }
    CHECK(family_degree3(parse_poly("x1^3 + x2^3")).reduced);
}

TEST_CASE("leading forms separate the two dim-20 algebras") {
    LeadingFormAnalysis a = leading_form_analysis(nil_polynomial(milnor("dim20a")).p);
    LeadingFormAnalysis b = leading_form_analysis(nil_polynomial(milnor("dim20b")).p);
    for (const auto* r : {&a, &b}) {
        CHECK(r->degree == 6);
        CHECK(r->essential_variables == 2);
        REQUIRE(r->binary_form.has_value());
        REQUIRE(r->profile.has_value());
        CHECK(r->profile->other.empty());
        CHECK(proportional(expand_profile(*r->profile, r->binary_form->vars()), *r->binary_form));
    }
    // One has a perfect-square factor and no irreducible quadratic; the other an
    // irreducible quadratic factor of negative discriminant.
    bool a_square = false, b_square = false;
    for (const auto& l : a.profile->linear) a_square = a_square || l.multiplicity >= 2;
    for (const auto& l : b.profile->linear) b_square = b_square || l.multiplicity >= 2;
    CHECK(a_square);
    CHECK(a.profile->quadratic.empty());
    REQUIRE(b.profile->quadratic.size() == 1);
    CHECK(b.profile->quadratic[0].discriminant_sign < 0);
    CHECK(a.profile->signature() != b.profile->signature());
    CHECK_FALSE((b_square && b.profile->quadratic.empty()));
}

TEST_CASE("binary factor profiles of constructed forms") {
    VarList xy{"x", "y"};
    MPoly f = parse_poly("x^2 - 2*x*y + y^2", xy) * parse_poly("x^2 + y^2", xy) * parse_poly("2*x + 3*y", xy) *
              parse_poly("y", xy);
    FactorProfile fp = binary_factor_profile(f);
    CHECK(proportional(expand_profile(fp, xy), f));
    REQUIRE(fp.quadratic.size() == 1);
    CHECK(fp.quadratic[0].discriminant_sign < 0);
    std::size_t total = 0;
    for (const auto& l : fp.linear) total += l.multiplicity;
    CHECK(total == 4);
    CHECK_THROWS_AS(binary_factor_profile(parse_poly("x + y^2", xy)), std::invalid_argument);
}

TEST_CASE("nil-polynomial validation") {
    CHECK_THROWS_AS(check_nil_polynomial(parse_poly("x1 + x1*x2", standard_vars(2))), std::domain_error);
    CHECK_THROWS_AS(check_nil_polynomial(parse_poly("x1^2 + x1^3", standard_vars(2))), std::domain_error);
    CHECK_NOTHROW(check_nil_polynomial(parse_poly("x1*x2 + x1^3", standard_vars(2))));
    CHECK(gram_matrix(parse_poly("x1*x2 + 1/2*x3^2", standard_vars(3))) ==
          Matrix::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
    CHECK_THROWS_AS(reconstruct_algebra(parse_poly("x1^2", standard_vars(2)), MPoly(standard_vars(2))),
                    std::domain_error);
}

TEST_CASE("leading radical of a form in fewer essential variables") {
    MPoly top = parse_poly("x1^4 + x1^2*x2^2", standard_vars(4));
    Subspace rad = leading_radical(top);
    CHECK(rad.dim() == 2);
    CHECK(rad.contains(unit_vec(4, 2)));
    CHECK(rad.contains(unit_vec(4, 3)));
}
