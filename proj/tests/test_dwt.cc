#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "graphsteg/dwt.hpp"
#include "graphsteg/error.hpp"
#include "test_helpers.hpp"

namespace graphsteg {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

TEST(DwtLevel, HandCases) {
  auto c = dwt_level(std::vector<double>{1, 1, 1, 1});
  EXPECT_NEAR(c.approx[0], kSqrt2, 1e-15);
  EXPECT_NEAR(c.approx[1], kSqrt2, 1e-15);
  EXPECT_EQ(c.detail, (std::vector<double>{0, 0}));

  auto alt = dwt_level(std::vector<double>{1, -1});
  EXPECT_EQ(alt.approx[0], 0.0);
  EXPECT_NEAR(alt.detail[0], kSqrt2, 1e-15);

  try {
    dwt_level(std::vector<double>{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OddLength);
  }
}

TEST(DwtLevel, EnergyConservation) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto x = testing::random_vector(80, rng);
    const auto c = dwt_level(x);
    const double in = testing::norm2(x);
    EXPECT_NEAR(testing::norm2(c.approx) + testing::norm2(c.detail), in, 1e-12 * std::max(1.0, in));
  }
}

TEST(DwtMulti, ShapesForDefaultFrame) {
  std::mt19937_64 rng(2);
  const auto tree = dwt_multi(testing::random_vector(80, rng), 2);
  EXPECT_EQ(tree.approx.size(), 20u);
  ASSERT_EQ(tree.details.size(), 2u);
  EXPECT_EQ(tree.details[0].size(), 40u);
  EXPECT_EQ(tree.details[1].size(), 20u);
  try {
    dwt_multi(std::vector<double>(82, 0.0), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndivisibleLength);
  }
}

TEST(DwtMulti, ConstantFrame) {
  const auto tree = dwt_multi(std::vector<double>(80, 0.25), 2);
  for (double a : tree.approx) EXPECT_NEAR(a, 0.5, 1e-15);
  for (const auto& d : tree.details)
    for (double v : d) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(DwtMulti, PerfectReconstructionAndParseval) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const int levels = 1 + static_cast<int>(rng() % 4);
    const auto x = testing::random_vector(16 * (1 + rng() % 10), rng);
    const auto tree = dwt_multi(x, levels);
    double energy = testing::norm2(tree.approx);
    for (const auto& d : tree.details) energy += testing::norm2(d);
    EXPECT_NEAR(energy, testing::norm2(x), 1e-12 * testing::norm2(x));
    const auto y = idwt_multi(tree);
    ASSERT_EQ(y.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(y[i], x[i], 1e-10);
  }
}

TEST(DwtMulti, Linearity) {
  std::mt19937_64 rng(4);
  const auto x = testing::random_vector(80, rng), y = testing::random_vector(80, rng);
  const double a = 0.7, b = -1.3;
  std::vector<double> mix(80);
  for (std::size_t i = 0; i < 80; ++i) mix[i] = a * x[i] + b * y[i];
  const auto tx = dwt_multi(x, 2), ty = dwt_multi(y, 2), tm = dwt_multi(mix, 2);
  for (std::size_t k = 0; k < 20; ++k) EXPECT_NEAR(tm.approx[k], a * tx.approx[k] + b * ty.approx[k], 1e-12);
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t k = 0; k < tm.details[l].size(); ++k)
      EXPECT_NEAR(tm.details[l][k], a * tx.details[l][k] + b * ty.details[l][k], 1e-12);
}

TEST(IdwtMulti, HandCasesAndErrors) {
  DwtTree tree{1, {kSqrt2, kSqrt2}, {{0, 0}}};
  const auto y = idwt_multi(tree);
  for (double v : y) EXPECT_NEAR(v, 1.0, 1e-15);

  DwtTree zero{2, std::vector<double>(20, 0.0), {std::vector<double>(40, 0.0), std::vector<double>(20, 0.0)}};
  for (double v : idwt_multi(zero)) EXPECT_EQ(v, 0.0);

  DwtTree bad = zero;
  bad.details[0].pop_back();
  try {
    idwt_multi(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

TEST(IdwtMulti, ApproxOnlyPathIsIsolated) {
  std::mt19937_64 rng(5);
  const auto x = testing::random_vector(80, rng);
  const auto tree = dwt_multi(x, 2);
  DwtTree modified = tree;
  for (double& a : modified.approx) a += 0.1;
  DwtTree restored = modified;
  restored.approx = tree.approx;
  const auto y = idwt_multi(restored);
  for (std::size_t i = 0; i < 80; ++i) EXPECT_NEAR(y[i], x[i], 1e-10);
}

}  // namespace
}  // namespace graphsteg
