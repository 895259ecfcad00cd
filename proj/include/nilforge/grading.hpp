#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nilforge/algebra.hpp"

namespace nilforge {

/// Grading recorded as a basis change: column i of `basis` (original
/// coordinates) spans a line of weight weights[i].
struct Grading {
    Matrix basis;
    std::vector<unsigned> weights;
};

struct GradingCheck {
    bool valid = false;
    bool theta_automorphism = false;
    /// First basis pair whose product leaves the block of weight w_i + w_j.
    std::optional<std::array<std::size_t, 2>> failing_pair;
};

GradingCheck verify_grading(const NilAlgebra& a, const Grading& g);
/// θ_t = t^k on the weight-k block, in original coordinates.
Matrix theta(const Grading& g, const Rational& t);
/// x ↦ k·x on the weight-k block; a derivation for every valid grading.
Matrix euler_derivation(const Grading& g);
/// Components of x by weight: result[k] lies in the weight-k block.
std::vector<Vec> weight_components(const Grading& g, const Vec& x, unsigned max_weight);

/// Kernel of ω with its induced product x·y = (id − π)(xy) and form
/// h(x, y) = ω(xy). Coordinates on W drop the index pointing_index(p).
struct PointedSplit {
    std::vector<Vec> w_basis;   // in algebra coordinates
    Matrix h;                   // Gram matrix on W
    std::vector<Matrix> ops;    // ops[i] = y ↦ w_i·y on W
    Vec unit;                   // annihilator element with ω = 1
    std::size_t skip = 0;       // dropped coordinate
};

PointedSplit pointed_split(const NilAlgebra& a, const Pointing& p);
/// W coordinates of an element of ker ω.
Vec to_w(const PointedSplit& s, const Vec& x);
/// Algebra coordinates of a W coordinate vector.
Vec from_w(const PointedSplit& s, const Vec& y);

/// E = E0 ⊕ E1 ⊕ E2 ⊕ E3 with B = E2 ⊕ E3 and K = E0 ⊕ E3, where B is the
/// span of all operator images and K their common kernel. E0, E1 ⊕ E3 and
/// E2 are mutually h-orthogonal; E1 and E3 are totally isotropic.
struct AdaptedDecomposition {
    std::vector<Vec> e0, e1, e2, e3;
};

/// Throws std::domain_error for degenerate h or a non-selfadjoint operator.
AdaptedDecomposition adapted_decomposition(const std::vector<Matrix>& ops, const Matrix& h);

/// Grading with weights 2, 3, 4, 6 on W1, W0, W3 and the annihilator, for
/// admissible algebras of nil-index at most 3.
Grading grading_index3(const NilAlgebra& a);

/// Pointing vanishing on all blocks except the top weight.
Pointing graded_pointing(const NilAlgebra& a, const Grading& g);

}  // namespace nilforge
