#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "graphsteg/error.hpp"
#include "graphsteg/linalg.hpp"
#include "test_helpers.hpp"

namespace graphsteg {
namespace {

Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = d(rng);
  return m;
}

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  return Matrix(r, c, testing::random_vector(r * c, rng));
}

void expect_orthogonal(const Matrix& v, double tol) {
  EXPECT_LE(max_abs_diff(v.transpose() * v, Matrix::identity(v.cols())), tol);
}

// Determinant by Gaussian elimination with partial pivoting (test oracle).
double determinant(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (a(p, c) == 0.0) return 0.0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

TEST(SymmetricEvd, SmallKnownCases) {
  EXPECT_EQ(symmetric_evd(Matrix::identity(3)).eigenvalues, (std::vector<double>{1, 1, 1}));
  std::vector<double> d{3, 1, 2};
  EXPECT_EQ(symmetric_evd(Matrix::diagonal(d)).eigenvalues, (std::vector<double>{1, 2, 3}));

  // Characteristic polynomial of the P3 Laplacian is -l (l - 1)(l - 3).
  const Matrix p3{{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
  const auto evd = symmetric_evd(p3);
  const std::vector<double> roots{0.0, 1.0, 3.0};
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(evd.eigenvalues[k], roots[k], 1e-9);
}

TEST(SymmetricEvd, FrozenReferenceValues) {
  // Reference eigenvalues from an independent LAPACK (numpy eigvalsh) run.
  const Matrix m{{4, 1, -2, 2}, {1, 2, 0, 1}, {-2, 0, 3, -2}, {2, 1, -2, -1}};
  const std::vector<double> expected{-2.19751698, 1.08436446, 2.26853141, 6.84462111};
  const auto evd = symmetric_evd(m);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(evd.eigenvalues[k], expected[k], 1e-8);
  for (double lambda : evd.eigenvalues) {
    Matrix shifted = m;
    for (std::size_t i = 0; i < 4; ++i) shifted(i, i) -= lambda;
    EXPECT_NEAR(determinant(shifted), 0.0, 1e-9);
  }
}

TEST(SymmetricEvd, RandomPropertySuite) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 19;
    const Matrix m = random_symmetric(n, rng);
    const auto evd = symmetric_evd(m);
    ASSERT_TRUE(std::is_sorted(evd.eigenvalues.begin(), evd.eigenvalues.end()));
    expect_orthogonal(evd.eigenvectors, 1e-9);
    const Matrix rebuilt = evd.eigenvectors * Matrix::diagonal(evd.eigenvalues) * evd.eigenvectors.transpose();
    EXPECT_LE(max_abs_diff(rebuilt, m), 1e-8);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t r = 0; r < n; ++r) {
        const double v = evd.eigenvectors(r, c);
        if (std::abs(v) > 1e-12) {
          EXPECT_GT(v, 0.0);
          break;
        }
      }
    }
    // Orthogonality round trip on a random vector.
    const auto x = testing::random_vector(n, rng);
    const auto y = evd.eigenvectors * (evd.eigenvectors.transpose() * std::span<const double>(x));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], x[i], 1e-9);
  }
}

TEST(SymmetricEvd, PsdInputHasNonnegativeSpectrum) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const Matrix b = random_matrix(6, 4, rng);
    for (double l : symmetric_evd(b.transpose() * b).eigenvalues) EXPECT_GE(l, -1e-9);
  }
}

TEST(SymmetricEvd, Deterministic) {
  std::mt19937_64 rng(9);
  const Matrix m = random_symmetric(20, rng);
  const auto a = symmetric_evd(m), b = symmetric_evd(m);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(SymmetricEvd, Errors) {
  try {
    symmetric_evd(Matrix(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSquare);
  }
  try {
    symmetric_evd(Matrix{{1, 2}, {2.001, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(SvdSmall, KnownCases) {
  EXPECT_EQ(svd_small(Matrix::identity(4)).s, (std::vector<double>{1, 1, 1, 1}));
  std::vector<double> d{2, 0, 0, 0};
  const auto r = svd_small(Matrix::diagonal(d));
  EXPECT_EQ(r.s, (std::vector<double>{2, 0, 0, 0}));
  expect_orthogonal(r.u, 1e-12);
  expect_orthogonal(r.v, 1e-12);

  // Reference singular values from numpy.linalg.svd.
  const Matrix b{{1, 2, 3, 4}, {0, -1, 2, 5}, {3, 1, 0, -2}, {2, 2, 2, 2}};
  const std::vector<double> expected{8.10135293, 4.65417758, 1.64011477, 0.12936454};
  const auto rb = svd_small(b);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(rb.s[k], expected[k], 1e-8);
}

TEST(SvdSmall, MatchesEigenvaluesOfGram) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const Matrix m = random_matrix(4, 4, rng);
    const auto svd = svd_small(m);
    auto eig = symmetric_evd(m.transpose() * m).eigenvalues;
    std::reverse(eig.begin(), eig.end());
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(svd.s[k], std::sqrt(std::max(0.0, eig[k])), 1e-8);
  }
}

TEST(SvdSmall, ReconstructionAndShapes) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    Matrix m = random_matrix(r, c, rng);
    if (t % 5 == 0 && c > 1)  // rank-deficient: duplicate a column
      for (std::size_t i = 0; i < r; ++i) m(i, c - 1) = m(i, 0);
    const auto svd = svd_small(m);
    ASSERT_EQ(svd.u.rows(), r);
    ASSERT_EQ(svd.u.cols(), r);
    ASSERT_EQ(svd.v.rows(), c);
    ASSERT_EQ(svd.s.size(), std::min(r, c));
    EXPECT_TRUE(std::is_sorted(svd.s.rbegin(), svd.s.rend()));
    for (double s : svd.s) EXPECT_GE(s, 0.0);
    expect_orthogonal(svd.u, 1e-9);
    expect_orthogonal(svd.v, 1e-9);
    double inf_norm = 0.0;
    for (double x : m.entries()) inf_norm = std::max(inf_norm, std::abs(x));
    EXPECT_LE(max_abs_diff(svd.reconstruct(), m), 1e-8 * std::max(1.0, inf_norm));
  }
}

TEST(SvdSmall, Deterministic) {
  std::mt19937_64 rng(2);
  const Matrix m = random_matrix(4, 4, rng);
  const auto a = svd_small(m), b = svd_small(m);
  EXPECT_EQ(a.s, b.s);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.v, b.v);
}

}  // namespace
}  // namespace graphsteg
