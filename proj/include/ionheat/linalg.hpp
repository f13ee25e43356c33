#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Minimal dense linear algebra for the small (N <= 50) symmetric problems in
// this project. Deterministic by construction: fixed sweep and summation
// order, no hidden parallelism.
namespace ionheat {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(a_.data() + i * cols_, cols_);
  }
  std::span<double> row(std::size_t i) {
    return std::span<double>(a_.data() + i * cols_, cols_);
  }

  const std::vector<double>& data() const { return a_; }

  static Matrix identity(std::size_t n);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // row p = eigenvector of values[p]
};

// Cyclic Jacobi rotations, fixed row-major sweep order. Eigenvalues sorted
// ascending; each eigenvector's largest-magnitude entry is made positive
// (ties broken by lowest index) so output is stable for serialization.
EigenSystem jacobi_eigensystem(Matrix a);

// Lower-triangular factor L with A = L L^T. Pivots below semidefinite_tol
// (relative to the largest diagonal entry) zero out their column, so
// positive-semidefinite inputs factor cleanly; a pivot below
// -semidefinite_tol throws.
Matrix cholesky_lower(const Matrix& a, double semidefinite_tol = 1e-12);

// Solve A x = b for symmetric positive definite A.
std::vector<double> solve_spd(const Matrix& a, std::span<const double> b);

}  // namespace ionheat
