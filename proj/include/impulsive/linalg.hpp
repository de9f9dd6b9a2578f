#pragma once

// Small dense linear algebra: row-major square matrices, cyclic Jacobi
// eigensolver for symmetric matrices, LU with partial pivoting for
// determinants and linear solves. Problem sizes here are desk-scale
// (Gram/Hessian matrices up to a few hundred rows).

#include <cstddef>
#include <span>
#include <vector>

namespace impulsive::linalg {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }

    const std::vector<double>& data() const { return data_; }

    // max_i sum_j |a_ij|
    double inf_norm() const;
    // max_ij |a_ij|
    double max_abs() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> matvec(const Matrix& a, std::span<const double> x);

struct EigenResult {
    std::vector<double> values; // ascending
    Matrix vectors;             // column k is the eigenvector of values[k]
};

// Cyclic Jacobi; a must be symmetric. Accurate to ~n * eps * |a|.
EigenResult sym_eigen(const Matrix& a);

// Inertia of a symmetric matrix: counts of eigenvalues below -tol, within
// [-tol, tol], and above tol.
struct Inertia {
    int negative = 0;
    int zero = 0;
    int positive = 0;
};
Inertia sym_inertia(const Matrix& a, double tol);

// Determinant via LU with partial pivoting.
double det(Matrix a);

// Solves a x = rhs in place; returns false when a pivot falls below
// pivot_floor * max|a| (treated as numerically singular).
bool lu_solve(Matrix a, std::vector<double>& rhs, double pivot_floor = 1e-13);

} // namespace impulsive::linalg
