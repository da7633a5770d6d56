#include "graphsteg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphsteg/error.hpp"

namespace graphsteg {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw Error(ErrorCode::LengthMismatch, "entry count does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::LengthMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::LengthMismatch, "matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::LengthMismatch, "matrix-vector shape mismatch");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::LengthMismatch, "shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double frobenius_norm(const Matrix& m) {
  double sum = 0.0;
  for (double v : m.entries()) sum += v * v;
  return std::sqrt(sum);
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kSymmetryTol = 1e-10;
constexpr double kSignTol = 1e-12;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// Flips column `col` of m (and of `partner` when given) so the first
// significant entry of m's column is positive.
void canonical_sign(Matrix& m, std::size_t col, Matrix* partner = nullptr) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double v = m(r, col);
    if (std::abs(v) > kSignTol) {
      if (v < 0.0) {
        for (std::size_t k = 0; k < m.rows(); ++k) m(k, col) = -m(k, col);
        if (partner != nullptr)
          for (std::size_t k = 0; k < partner->rows(); ++k) (*partner)(k, col) = -(*partner)(k, col);
      }
      return;
    }
  }
}

Matrix permute_columns(const Matrix& m, std::span<const std::size_t> order) {
  Matrix out(m.rows(), order.size());
  for (std::size_t c = 0; c < order.size(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = m(r, order[c]);
  return out;
}

}  // namespace

EvdResult symmetric_evd(const Matrix& m) {
  if (!m.square()) throw Error(ErrorCode::NotSquare, "eigendecomposition needs a square matrix");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTol)
        throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");

  Matrix a = m;
  // Work on the exactly symmetrized copy so rotations stay consistent.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
  Matrix v = Matrix::identity(n);
  const double target = 1e-12 * frobenius_norm(m);

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (sweep++ == kMaxSweeps) throw Error(ErrorCode::NoConvergence, "Jacobi EVD exceeded 100 sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J on rows/cols p and q.
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EvdResult result;
  result.eigenvalues.reserve(n);
  for (std::size_t k : order) result.eigenvalues.push_back(a(k, k));
  result.eigenvectors = permute_columns(v, order);
  for (std::size_t c = 0; c < n; ++c) canonical_sign(result.eigenvectors, c);
  return result;
}

namespace {

// Hestenes one-sided Jacobi for m >= n: orthogonalizes the columns of A in
// place while accumulating the right rotations in V.
SvdResult svd_tall(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  Matrix a = m;
  Matrix v = Matrix::identity(cols);
  constexpr double kEps = 1e-15;

  bool rotated = true;
  int sweep = 0;
  while (rotated) {
    if (sweep++ == kMaxSweeps) throw Error(ErrorCode::NoConvergence, "Jacobi SVD exceeded 100 sweeps");
    rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += a(k, p) * a(k, p);
          beta += a(k, q) * a(k, q);
          gamma += a(k, p) * a(k, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < cols; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<double> norms(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < rows; ++k) sum += a(k, j) * a(k, j);
    norms[j] = std::sqrt(sum);
  }
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out;
  out.v = permute_columns(v, order);
  out.u = Matrix(rows, rows);
  const double scale = std::max(1.0, frobenius_norm(m));
  std::size_t filled = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double sigma = norms[order[c]];
    out.s.push_back(sigma);
    if (sigma > 1e-13 * scale) {
      for (std::size_t k = 0; k < rows; ++k) out.u(k, c) = a(k, order[c]) / sigma;
      ++filled;
    }
  }

  // Complete U to an orthonormal basis (null columns and the m > n block) by
  // Gram-Schmidt over the standard basis vectors.
  std::vector<bool> have(rows, false);
  for (std::size_t c = 0; c < filled; ++c) have[c] = true;
  std::size_t candidate = 0;
  for (std::size_t c = 0; c < rows; ++c) {
    if (have[c]) continue;
    while (true) {
      std::vector<double> e(rows, 0.0);
      e[candidate++ % rows] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < rows; ++j) {
          if (!have[j]) continue;
          double dot = 0.0;
          for (std::size_t k = 0; k < rows; ++k) dot += out.u(k, j) * e[k];
          for (std::size_t k = 0; k < rows; ++k) e[k] -= dot * out.u(k, j);
        }
      double norm = 0.0;
      for (double x : e) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (std::size_t k = 0; k < rows; ++k) out.u(k, c) = e[k] / norm;
        have[c] = true;
        break;
      }
    }
  }
  return out;
}

}  // namespace

SvdResult svd_small(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorCode::LengthMismatch, "empty matrix");
  for (double x : m.entries())
    if (!std::isfinite(x)) throw Error(ErrorCode::BadParameter, "non-finite matrix entry");
  if (m.rows() >= m.cols()) return svd_tall(m);
  SvdResult t = svd_tall(m.transpose());
  return SvdResult{std::move(t.v), std::move(t.s), std::move(t.u)};
}

Matrix SvdResult::reconstruct() const { return reconstruct(s); }

Matrix SvdResult::reconstruct(std::span<const double> singular_values) const {
  Matrix us(u.rows(), v.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t k = 0; k < singular_values.size(); ++k) us(i, k) = u(i, k) * singular_values[k];
  return us * v.transpose();
}

}  // namespace graphsteg
