#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scim {

// Small dense row-major matrix; the battery has tens of columns at most.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Solves A x = b for symmetric positive definite A by Cholesky
/// factorization. Throws Error(unprocessable) when A is not numerically
/// positive definite.
std::vector<double> solve_spd(const Matrix& a, std::span<const double> b);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix until the off-diagonal
/// Frobenius norm drops below `tolerance` (relative to the full norm).
EigenDecomposition jacobi_eigen(const Matrix& symmetric, double tolerance = 1e-10,
                                int max_sweeps = 100);

}  // namespace scim
