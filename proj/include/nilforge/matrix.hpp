#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nilforge/rational.hpp"

namespace nilforge {

/// Dense row-major matrix over the rationals. at() is bounds checked and
/// throws std::out_of_range; there is no implicit zero extension.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows);
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& at(std::size_t r, std::size_t c);
    const Rational& at(std::size_t r, std::size_t c) const;

    // Unchecked access for inner loops that already validated their bounds.
    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;
    Vec col(std::size_t c) const;
    void set_col(std::size_t c, const Vec& v);
    Matrix transpose() const;
    bool is_zero() const;
    double density() const;

    Vec apply(const Vec& v) const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);

/// Sparse row: strictly increasing column indices, no stored zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

SparseRow to_sparse(const Vec& v);

/// Row-list sparse matrix with the same semantics as Matrix.
class SparseMatrix {
public:
    SparseMatrix() = default;
    explicit SparseMatrix(std::size_t cols) : cols_(cols) {}

    static SparseMatrix from_dense(const Matrix& m);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    /// Entries may arrive unsorted or with repeated columns; they are merged.
    void add_row(SparseRow row);
    const SparseRow& row(std::size_t r) const { return rows_.at(r); }
    Rational at(std::size_t r, std::size_t c) const;

    Matrix to_dense() const;
    std::size_t nonzeros() const;
    Vec apply(const Vec& v) const;

private:
    std::size_t cols_ = 0;
    std::vector<SparseRow> rows_;
};

}  // namespace nilforge
