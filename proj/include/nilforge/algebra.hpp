#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nilforge/linalg.hpp"
#include "nilforge/matrix.hpp"
#include "nilforge/mpoly.hpp"
#include "nilforge/rational.hpp"

namespace nilforge {

/// Commutative algebra on an ordered basis e_0..e_{n-1}, given by structure
/// constants. The table is stored symmetrically, so commutativity holds by
/// construction. Associativity and nilpotency are checked by verify_algebra.
class NilAlgebra {
public:
    NilAlgebra() = default;
    explicit NilAlgebra(std::vector<std::string> labels);

    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Sets e_i·e_j (and e_j·e_i).
    void set_product(std::size_t i, std::size_t j, const Vec& value);
    void set_product(std::size_t i, std::size_t j, SparseRow value);
    const SparseRow& product(std::size_t i, std::size_t j) const;
    Vec product_vec(std::size_t i, std::size_t j) const;

    Vec mul(const Vec& x, const Vec& y) const;
    /// Matrix of y ↦ x·y.
    Matrix mult_operator(const Vec& x) const;
    /// x^k for k >= 1.
    Vec power(const Vec& x, unsigned k) const;

    /// Symbolic product of elements whose coordinates are polynomials.
    PolyVec mul(const PolyVec& x, const PolyVec& y) const;

    friend bool operator==(const NilAlgebra& a, const NilAlgebra& b) = default;

private:
    void check(std::size_t i) const;

    std::vector<std::string> labels_;
    std::vector<SparseRow> table_;
};

struct AlgebraReport {
    bool associative = false;
    /// Lexicographically first (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k).
    std::optional<std::array<std::size_t, 3>> failing_triple;
    bool nilpotent = false;
    std::size_t nil_index = 0;
    bool admissible = false;
};

AlgebraReport verify_algebra(const NilAlgebra& a);

/// N^1 = N, N^{k+1} = N^k·N; last entry is the first zero power.
std::vector<Subspace> power_chain(const NilAlgebra& a);
/// N_[k] = {x : x·N^k = 0} for k = 0..ν+1 (N_[0] = 0, N_[ν+1] = N).
std::vector<Subspace> socle_chain(const NilAlgebra& a);
Subspace annihilator(const NilAlgebra& a);

struct Invariants {
    std::size_t nil_index = 0;
    std::vector<std::size_t> hilbert;  // H(0..ν)
    bool hilbert_symmetric = false;
    std::vector<Subspace> powers;
    std::vector<Subspace> socles;
    Subspace annihilator{0};
    bool admissible = false;
};

Invariants invariants(const NilAlgebra& a);

/// Associated graded algebra ⊕ N^k/N^{k+1}. `weights` receives the degree of
/// each new basis vector; `lift` the chosen representatives in N.
NilAlgebra associated_graded(const NilAlgebra& a, std::vector<unsigned>* weights = nullptr,
                             Matrix* lift = nullptr);

Vec exp1(const NilAlgebra& a, const Vec& x);
Vec log1(const NilAlgebra& a, const Vec& x);

/// Pointing ω with ω(Ann N) != 0.
struct Pointing {
    Vec omega;
};

/// Generator of the annihilator in reduced echelon normalization.
/// Throws std::domain_error when the algebra is not admissible.
Vec annihilator_generator(const NilAlgebra& a);
/// ω = e_{i0}^* / a_{i0} for the last nonzero coordinate i0 of the
/// annihilator generator a, so ω(a) = 1 and ker ω is a coordinate subspace.
Pointing default_pointing(const NilAlgebra& a);
std::size_t pointing_index(const Pointing& p);
/// Throws std::domain_error unless ω is nonzero on the annihilator.
void check_pointing(const NilAlgebra& a, const Pointing& p);
/// The unique admissible projection π with ω = ψ∘π.
Matrix projection(const NilAlgebra& a, const Pointing& p);
/// Element of the annihilator with ω = 1.
Vec unit_annihilator(const NilAlgebra& a, const Pointing& p);
/// Basis of ker ω: e_i − (ω_i/ω_{i0}) e_{i0} for i != i0.
std::vector<Vec> kernel_basis(const Pointing& p);

/// Whether linear map m: source → target (columns = images of basis vectors)
/// preserves every basis product.
bool is_homomorphism(const NilAlgebra& source, const NilAlgebra& target, const Matrix& m);

struct DerivationResult {
    std::vector<Matrix> basis;
    std::size_t dim() const { return basis.size(); }
};

DerivationResult derivation_algebra(const NilAlgebra& a);
bool is_derivation(const NilAlgebra& a, const Matrix& d);

/// The unique v in ker π with [π, D] = π∘M_v. Throws std::domain_error if D
/// is not a derivation fixing the annihilator.
Vec derivation_shift(const NilAlgebra& a, const Pointing& p, const Matrix& d);
/// Exact check of ω(exp(x)·(Dx − v)) = μ·ω(exp₁ x) with D(a) = μ a, as a
/// polynomial identity in the coordinates of x.
bool tangency_identity(const NilAlgebra& a, const Pointing& p, const Matrix& d, const Vec& v);

struct DerivationBounds {
    std::size_t der_dim = 0;
    std::size_t ty_bound = 0;        // dim N/N² · dim N_[1] + dim N_[3]/N_[2]
    std::size_t quartic_bound = 0;   // dim N/N⁴
    bool ty_holds = false;
    bool quartic_holds = false;
};

DerivationBounds derivation_bounds(const NilAlgebra& a, std::size_t der_dim);

struct PointedAlgebra {
    NilAlgebra algebra;
    Pointing pointing;
};

/// (A×B)/I with I = {(s,t) ∈ Ann A × Ann B : ω_A(s) + ω_B(t) = 0}. The basis
/// is A's basis followed by B's basis minus the last coordinate on which
/// B's annihilator generator is nonzero.
PointedAlgebra smash_product(const PointedAlgebra& a, const PointedAlgebra& b);

/// Polynomial coordinates of Σ_i x_i·basis[i] in the variables `vars`.
PolyVec linear_element(const std::vector<Vec>& basis, const VarList& vars);

/// Symbolic ω(exp₁ X) for X = Σ_i x_i e_i over all n coordinates.
MPoly hypersurface_function(const NilAlgebra& a, const Pointing& p, const VarList& vars);

}  // namespace nilforge
