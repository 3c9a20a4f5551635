#pragma once

// Small dense linear algebra over Real: just what the Hankel, Golub-Welsch
// and Nyström routes need.

#include <cstddef>
#include <span>
#include <vector>

#include "hardedge/real.hpp"

namespace hardedge::linalg {

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Real& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Real& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

/// Lower Cholesky factor of a symmetric positive definite matrix. Returns
/// false (leaving `lower` partially filled) if a pivot is not positive.
bool cholesky(const Matrix& a, Matrix& lower);

/// Solves L y = b for lower-triangular L.
std::vector<Real> forward_substitute(const Matrix& lower, std::span<const Real> b);

/// Solves L^T x = y for lower-triangular L.
std::vector<Real> back_substitute_transposed(const Matrix& lower, std::span<const Real> y);

/// Inverse of a lower-triangular matrix (also lower-triangular).
Matrix invert_lower(const Matrix& lower);

/// x^T A y
Real bilinear(std::span<const Real> x, const Matrix& a, std::span<const Real> y);

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit QL.
/// `diag` (size m) and `offdiag` (size m, offdiag[i] couples i and i+1, the
/// last entry unused) are overwritten; on return `diag` holds the
/// eigenvalues. If `first_row` is non-null it receives the first component
/// of each normalized eigenvector. Throws ConvergenceError.
void tridiagonal_eigen(std::vector<Real>& diag, std::vector<Real>& offdiag,
                       std::vector<Real>* first_row);

/// Eigenvalues of a symmetric matrix (Householder reduction + implicit QL),
/// sorted ascending.
std::vector<Real> symmetric_eigenvalues(Matrix a);

}  // namespace hardedge::linalg
