#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nilforge/matrix.hpp"
#include "nilforge/rational.hpp"

namespace nilforge {

/// Incrementally maintained reduced row echelon form.
/// Invariants: every stored row has leading entry 1 at its pivot column, and
/// every pivot column is zero in all other stored rows. Since the reduced
/// form of a row space is unique, the result does not depend on the order in
/// which rows are inserted.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t cols);

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    /// Returns true when the row enlarged the row space.
    bool insert(const SparseRow& row);
    bool insert(const Vec& row);

    /// Remainder of row after elimination against all pivots.
    SparseRow reduce(const SparseRow& row) const;
    Vec reduce(const Vec& row) const;
    bool contains(const Vec& row) const;

    bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }
    /// Pivot columns in increasing order.
    std::vector<std::size_t> pivots() const;
    /// Stored rows ordered by pivot column.
    std::vector<SparseRow> rows() const;
    std::vector<Vec> dense_rows() const;

    /// Kernel of the leading `ncols` columns; one vector per free column,
    /// 1 at the free column and minus the row entry at each pivot.
    std::vector<Vec> kernel_basis(std::size_t ncols) const;

    /// For an augmented system [A | b_0 | b_1 ...] with A occupying the first
    /// `ncols` columns: whether column rhs_col is in the span of A's columns.
    bool consistent(std::size_t ncols, std::size_t rhs_col) const;
    /// Solution with all free variables zero; std::nullopt if inconsistent.
    std::optional<Vec> particular(std::size_t ncols, std::size_t rhs_col) const;
    /// Rank of the leading ncols columns.
    std::size_t rank_of_prefix(std::size_t ncols) const;

private:
    void load(const SparseRow& row, std::vector<std::size_t>& support) const;

    std::size_t cols_;
    std::vector<SparseRow> rows_;
    std::vector<std::size_t> pivot_of_row_;
    std::vector<long> pivot_row_;
    mutable Vec scratch_;
};

struct LinearSolution {
    std::optional<Vec> particular;
    bool consistent = true;
    std::vector<Vec> kernel_basis;
    std::size_t rank = 0;
};

LinearSolution rref_solve(const Matrix& a, const std::optional<Vec>& b = std::nullopt);
LinearSolution rref_solve(const SparseMatrix& a, const std::optional<Vec>& b = std::nullopt);

std::size_t rank(const Matrix& a);
Matrix rref(const Matrix& a);
Rational determinant(const Matrix& a);
/// Throws std::domain_error for singular input.
Matrix inverse(const Matrix& a);
/// Solves a·x = b for invertible a; throws std::domain_error otherwise.
Vec solve_unique(const Matrix& a, const Vec& b);

/// Linear subspace of Q^n with its canonical (reduced echelon) basis.
class Subspace {
public:
    explicit Subspace(std::size_t ambient);
    static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace whole(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    std::size_t ambient_;
    std::vector<Vec> basis_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);
Subspace kernel(const Matrix& a);
/// Vectors extending a basis of `sub` to one of `super`, chosen greedily from
/// the canonical basis of `super` (or the unit vectors when super is whole).
std::vector<Vec> complement_basis(const Subspace& sub, const Subspace& super);

/// Polynomials in one variable as coefficient lists, lowest degree first,
/// no trailing zeros; the zero polynomial is empty.
using UPoly = std::vector<Rational>;

UPoly upoly_trim(UPoly p);
UPoly upoly_mul(const UPoly& a, const UPoly& b);
UPoly upoly_sub(const UPoly& a, const UPoly& b);
UPoly upoly_derivative(const UPoly& p);
/// Quotient and remainder; throws on division by zero.
std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (empty if both inputs are zero).
UPoly upoly_gcd(const UPoly& a, const UPoly& b);
Rational upoly_eval(const UPoly& p, const Rational& x);
/// Factors f_1, f_2, ... with p = lc · Π f_i^i, each f_i monic squarefree.
std::vector<UPoly> upoly_squarefree(const UPoly& p);
/// Distinct rational roots with multiplicities, ascending.
std::vector<std::pair<Rational, std::size_t>> upoly_rational_roots(const UPoly& p);

/// Positive divisors of |n| (n != 0), ascending.
std::vector<Integer> divisors(const Integer& n);

/// det(λI − A), monic, by the Faddeev–LeVerrier recurrence.
UPoly char_poly(const Matrix& a);

struct Eigenvalue {
    Rational value;
    std::size_t algebraic = 0;
    std::size_t geometric = 0;
};

struct Spectrum {
    std::vector<Eigenvalue> eigenvalues;
    bool splits = false;
    bool diagonalizable = false;
};

Spectrum rational_spectrum(const Matrix& a);

}  // namespace nilforge
