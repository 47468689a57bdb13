#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thetaframe/sequence.hpp"

namespace thetaframe {

/// Small dense row-major matrix. Sizes here are desk-scale (tens of rows).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  Vector multiply(std::span<const double> x) const;
  Matrix transpose() const;
  /// A^T A.
  Matrix gram() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
///
/// Sweeps until the off-diagonal Frobenius mass drops below tol times the
/// Frobenius norm of the input.
std::vector<double> symmetric_eigenvalues(Matrix a, double tol = 1e-12, int max_sweeps = 100);

}  // namespace thetaframe
