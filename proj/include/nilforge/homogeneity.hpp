#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilforge/algebra.hpp"
#include "nilforge/grading.hpp"
#include "nilforge/nilpoly.hpp"

namespace nilforge {

/// Affine map x ↦ linear·x + translation.
struct AffineMap {
    Matrix linear;
    Vec translation;

    Vec operator()(const Vec& x) const { return linear.apply(x) + translation; }
};

AffineMap compose(const AffineMap& outer, const AffineMap& inner);
/// Throws std::domain_error for a singular linear part.
AffineMap inverse(const AffineMap& g);

enum class HomogeneityVerdict { AH, locally_non_homogeneous };
std::string to_string(HomogeneityVerdict v);

struct HomogeneityOptions {
    bool cross_check = true;
    /// Called once per ℓ (1-based) as verdicts become available.
    std::function<void(std::size_t, bool)> on_verdict;
};

struct HomogeneityReport {
    std::size_t r = 0, s = 1, unknowns = 0, equations = 0;
    std::vector<bool> per_ell;
    std::size_t orbit_dim = 0;
    std::size_t aff_dim = 0;
    HomogeneityVerdict verdict = HomogeneityVerdict::locally_non_homogeneous;
    /// Present when the alternative formulation ran; true iff verdicts agree.
    std::optional<bool> cross_check;
    std::vector<bool> cross_check_per_ell;
    /// Solutions of the altered system: n² entries a_jk (row-major), then c_1..c_r.
    std::vector<Vec> aff_solutions;
    std::string scope = "solvability decided over the rationals";
};

/// Graph of the map (p_1..p_s) in r = common variable count coordinates.
HomogeneityReport homogeneity_report(const std::vector<MPoly>& ps, const HomogeneityOptions& opts = {});
HomogeneityReport homogeneity_report(const NilPolynomial& p, const HomogeneityOptions& opts = {});

/// Per-ℓ verdicts of ξf = ρf with ξ = ∂_ℓ + Σ a_jk x_k ∂_j, f = p − x_n and
/// constant ρ, as polynomial identities in n = r + 1 variables.
std::vector<bool> graph_field_verdicts(const MPoly& p);

/// Basis of aff(S) for S the graph of p: translation has c_j in the first r
/// slots and 0 in the last.
std::vector<AffineMap> aff_lie_algebra(const MPoly& p, const HomogeneityReport* report = nullptr);
/// Σ_{j≤r} A_j ∂_j p − A_n vanishes after x_n := p.
bool graph_tangent(const MPoly& p, const AffineMap& field);
/// Linear field x_j ↦ (w_j/L) x_j for a weighted-homogeneous p of degree L,
/// extended by a_nn = 1, as an n² + r solution vector of the altered system.
Vec euler_solution(const std::vector<Rational>& weights, const Rational& degree);
/// Whether a vector satisfies the altered system for p.
bool solves_altered_system(const MPoly& p, const Vec& solution);

enum class GradingVerdict { not_gradable, gradable_with_witness, inconclusive };
std::string to_string(GradingVerdict v);

struct GradingReport {
    bool system_solvable = false;
    std::size_t solution_space_dim = 0;
    /// Grading of the algebra reconstructed from p^[2], p^[3].
    std::optional<Grading> witness;
    std::vector<Rational> eigenvalues;
    GradingVerdict verdict = GradingVerdict::inconclusive;
};

GradingReport grading_necessary_test(const MPoly& p, const std::optional<Grading>& witness = std::nullopt);

/// λ with p = Σ λ_k ∂p/∂x_k, deg λ_k ≤ d, verified by substitution.
std::optional<std::vector<MPoly>> jacobi_membership(const MPoly& p, unsigned d);

enum class WitnessMode { graded, socle3, socle4 };

struct TransitivityWitness {
    AffineMap map;
    /// Graded mode: minimal weight of the moved point after each step.
    std::vector<unsigned> min_weight_trace;
    bool verified = false;
};

/// Affine g with g(a) = 0 and f∘g = f for f = ω∘exp₁. Throws
/// std::domain_error when a is not on S or the mode's precondition fails.
TransitivityWitness transitivity_witness(const NilAlgebra& a, const Pointing& p, const Vec& point, WitnessMode mode,
                                         const std::optional<Grading>& grading = std::nullopt);
/// Exact check of f∘g = f.
bool preserves_hypersurface(const NilAlgebra& a, const Pointing& p, const AffineMap& g);

/// log₁ of Σ coeffs[i]·kernel_basis[i]: a point of S.
Vec point_on_hypersurface(const NilAlgebra& a, const Pointing& p, const Vec& coeffs);

}  // namespace nilforge
