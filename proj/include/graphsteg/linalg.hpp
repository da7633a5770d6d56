#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace graphsteg {

// Dense row-major real matrix, sized for the small problems in this library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> entries() const { return data_; }
  std::span<double> entries() { return data_; }

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Largest absolute entry of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& m);

struct EvdResult {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

struct SvdResult {
  Matrix u;                // m x m
  std::vector<double> s;   // min(m, n) values, descending
  Matrix v;                // n x n

  /// U * diag(s) * V^T, with s padded to the m x n shape.
  Matrix reconstruct() const;
  Matrix reconstruct(std::span<const double> singular_values) const;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Eigenvalues come back ascending; each eigenvector is normalized so that its
/// first entry with magnitude above 1e-12 is positive. The sweep order is
/// fixed, so equal input bits always give equal output bits. Throws
/// NotSquare, NotSymmetric (tolerance 1e-10) or NoConvergence after 100 sweeps.
EvdResult symmetric_evd(const Matrix& m);

/// One-sided Jacobi SVD for small dense matrices (up to 8 x 8).
SvdResult svd_small(const Matrix& m);

}  // namespace graphsteg
