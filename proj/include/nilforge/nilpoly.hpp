#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilforge/algebra.hpp"
#include "nilforge/grading.hpp"
#include "nilforge/mpoly.hpp"

namespace nilforge {

/// p with zero constant and linear part and nondegenerate quadratic part.
/// When extracted from an algebra, `w_basis` holds the images of the
/// coordinate directions in ker ω.
struct NilPolynomial {
    MPoly p;
    std::optional<Pointing> pointing;
    std::vector<Vec> w_basis;

    const VarList& vars() const { return p.vars(); }
    std::size_t nvars() const { return p.nvars(); }
};

/// Gram matrix of ω₂ for the quadratic part (entries ω₂(e_i, e_j)).
Matrix gram_matrix(const MPoly& p);

/// Throws std::domain_error unless p has no constant or linear terms and a
/// nondegenerate quadratic part.
void check_nil_polynomial(const MPoly& p);

/// Names x1..xm.
VarList standard_vars(std::size_t m, const std::string& stem = "x");

/// p = ω(Σ_{k≥2} X^k/k!) for X = Σ x_i φ_i, φ the basis of ker ω.
NilPolynomial nil_polynomial(const NilAlgebra& a, std::optional<Pointing> pointing = std::nullopt);
/// Same with an explicit basis of ker ω and variable names, one per vector.
NilPolynomial nil_polynomial(const NilAlgebra& a, const Pointing& pointing, const std::vector<Vec>& w_basis,
                             const VarList& vars);

/// ω_ρ = ω∘M_{exp s}; throws std::domain_error unless ω(exp₁ s) = 0.
Pointing shift_pointing(const NilAlgebra& a, const Pointing& p, const Vec& s);
/// Symbolic check f_ρ(x) = f_π(x + s) with f = ω∘exp₁.
bool shift_duality_holds(const NilAlgebra& a, const Pointing& p, const Pointing& rho, const Vec& s);
/// s ⊕ s' = log₁(exp₁ s + exp₁ s' + exp₁ s · exp₁ s').
Vec group_law(const NilAlgebra& a, const Vec& s, const Vec& t);

struct Reconstruction {
    bool accepted = false;
    NilAlgebra algebra;      // on W ⊕ F, annihilator coordinate last
    AlgebraReport report;
    std::optional<std::array<std::size_t, 3>> failing_triple;
};

/// Product x·y = G⁻¹(ω₃(x, y, ·)) on W, extended by (x,s)(y,t) = (x·y, ω₂(x,y)).
/// Throws std::domain_error for degenerate q.
Reconstruction reconstruct_algebra(const MPoly& q, const MPoly& c);

/// Rebuilds p from p^[2] and p^[3] via ω_k(x,..,x) = ω₂(x^{·(k−1)}, x).
/// Throws std::domain_error when reconstruction rejects.
MPoly regenerate_from_2_3(const MPoly& q, const MPoly& c);

/// Checks that (x, s) ↦ Σ x_i w_basis[i] + s·(unit annihilator) is an
/// isomorphism from the reconstruction of (p^[2], p^[3]) onto the source.
bool reconstruction_isomorphism_holds(const NilAlgebra& source, const NilPolynomial& np);

struct FamilyResult {
    NilPolynomial poly;
    Reconstruction reconstruction;
    bool reduced = false;
    std::optional<Grading> grading;
};

/// p = Σ x_k y_k + c(x) with c cubic in the first m variables.
FamilyResult family_degree3(const MPoly& c);

struct QuarticInvariants {
    Rational g2, g3;
    std::optional<Rational> phi;
};

/// Classical invariants of a binary quartic a0x⁴+4a1x³y+6a2x²y²+4a3xy³+a4y⁴.
/// The input must be homogeneous of degree 4 in exactly two variables.
QuarticInvariants binary_quartic_invariants(const MPoly& d);

struct Degree4Family {
    MPoly q, c, d, p;
    bool theta_symmetric = false;
    bool regenerated_matches = false;
    QuarticInvariants invariants;
    std::optional<Rational> phi_closed_form;  // (4 + t²/ε)³ / (t²/ε)², undefined at t = 0
    Reconstruction reconstruction;
    Grading grading;
};

Degree4Family family_degree4(const Rational& t, const Rational& eps);
/// Σ_k ε_k⁻¹ c_ijk c_rsk symmetric in i and r, for c = ½Σ c_ijk x_i x_j y_k
/// with x the first n variables, y the next m, and ε the y-diagonal of q.
bool theta_symmetric(const MPoly& c, std::size_t n, std::size_t m, const std::vector<Rational>& eps);

struct EquivalenceWitness {
    Matrix alpha;
    Rational epsilon;
};

/// p̃(x) = ε·p(α⁻¹x); throws std::domain_error for singular α.
bool equivalence_witness_check(const MPoly& p, const MPoly& p_tilde, const EquivalenceWitness& w);
/// ε·p(α⁻¹x) in p's variables.
MPoly apply_witness(const MPoly& p, const EquivalenceWitness& w);

/// t(x1³ + x2³ + x3³) − 18·x1x2x3 + x1x4 + x2x5 + x3x6.
MPoly hesse_family(const Rational& t);
/// α = diag(1,1,1,1/t,1/t,1/t), ε = 1/t, taking hesse_family(t) to
/// x1³ + x2³ + x3³ − (18/t)x1x2x3 + x1x4 + x2x5 + x3x6. Requires t != 0.
EquivalenceWitness hesse_family_witness(const Rational& t);

struct LinearFactor {
    Rational a, b;   // a·x + b·y, normalized with the first nonzero entry 1
    std::size_t multiplicity = 0;
};

struct QuadraticFactor {
    std::array<Rational, 3> coeffs;  // c0·x² + c1·xy + c2·y²
    std::size_t multiplicity = 0;
    int discriminant_sign = 0;
};

struct FactorProfile {
    std::vector<LinearFactor> linear;
    std::vector<QuadraticFactor> quadratic;
    /// Degrees of the remaining irreducible factors of degree > 2, with multiplicity.
    std::vector<std::pair<std::size_t, std::size_t>> other;
    /// Sorted multiplicity signature, e.g. "L4 L2" or "L4 Q1-".
    std::string signature() const;
};

struct LeadingFormAnalysis {
    MPoly leading;
    int degree = -1;
    std::size_t essential_variables = 0;
    std::optional<MPoly> binary_form;
    std::optional<FactorProfile> profile;
};

/// Radical of the polarized top-degree form: {a : Σ a_i ∂_i p^[ν] = 0}.
Subspace leading_radical(const MPoly& top);
LeadingFormAnalysis leading_form_analysis(const MPoly& p);
/// Factor profile of a binary form over the rationals.
FactorProfile binary_factor_profile(const MPoly& form);

}  // namespace nilforge
