#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relcell/field.hpp"

namespace relcell {

using Vector = std::vector<Scalar>;

// Dense row-major matrix over one field.
class Matrix {
public:
    Matrix() : field_(FieldSpec::rationals()) {}
    Matrix(FieldSpec f, std::size_t rows, std::size_t cols);

    static Matrix identity(FieldSpec f, std::size_t n);
    static Matrix from_ints(FieldSpec f, const std::vector<std::vector<std::int64_t>>& rows);
    // Columns given as vectors of equal length.
    static Matrix from_columns(FieldSpec f, std::size_t rows, const std::vector<Vector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector row(std::size_t i) const;
    Vector column(std::size_t j) const;
    bool is_zero() const;

    // Integer entries; throws Unsupported for non-integral rationals.
    std::vector<std::vector<std::int64_t>> to_ints() const;
    std::string to_string() const;

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    FieldSpec field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// One vector per free column, -1 in the free slot.
std::vector<Vector> nullspace_basis(const Matrix& m);
std::optional<Vector> solve(const Matrix& a, const Vector& b);

Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);
Matrix transpose(const Matrix& m);
Matrix add(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, const Scalar& s);
// Stack rows of a on top of rows of b.
Matrix vstack(const Matrix& a, const Matrix& b);

Scalar determinant(const Matrix& m);
std::vector<Scalar> leading_minors(const Matrix& m);
// Symmetric elimination over Q.
bool is_positive_semidefinite(const Matrix& m);

// For B with independent columns returns L with L*B = I.
std::optional<Matrix> left_inverse(const Matrix& b);
// Columns extending the columns of B to a basis (standard vectors, greedy).
std::vector<std::size_t> complement_coordinates(const Matrix& b);

// P A P^T = B for some permutation P.
bool equal_up_to_simultaneous_permutation(const Matrix& a, const Matrix& b);
// P A Q = B for permutations P, Q.
bool equal_up_to_row_col_permutation(const Matrix& a, const Matrix& b);

}  // namespace relcell
