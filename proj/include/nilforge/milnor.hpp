#pragma once

#include <optional>
#include <vector>

#include "nilforge/algebra.hpp"
#include "nilforge/mpoly.hpp"

namespace nilforge {

struct MilnorResult {
    NilAlgebra algebra;
    VarList vars;
    std::vector<Monomial> monomial_basis;
    /// Certified degree: every monomial of this degree lies in the Jacobian ideal.
    unsigned truncation = 0;
    Vec residue;
    bool in_jacobi = false;
    AlgebraReport report;
};

struct MilnorOptions {
    unsigned trunc_max = 30;
    /// First truncation degree tried; defaults to 2·deg F.
    std::optional<unsigned> start;
};

/// Maximal ideal of R/J(F) for a germ F ∈ m². Works in m/m^{D+1} with columns
/// ordered by degree ascending and then lexicographically descending; the
/// quotient basis is the set of non-pivot monomials. Throws
/// std::domain_error when no D ≤ trunc_max certifies.
MilnorResult milnor_algebra(const MPoly& f, const MilnorOptions& options = {});

}  // namespace nilforge
