#include "graphsteg/dwt.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "graphsteg/error.hpp"

namespace graphsteg {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}  // namespace

DwtLevel dwt_level(std::span<const double> signal) {
  if (signal.size() < 2 || signal.size() % 2 != 0)
    throw Error(ErrorCode::OddLength, "Haar step needs an even length >= 2, got " + std::to_string(signal.size()));
  const std::size_t half = signal.size() / 2;
  DwtLevel out{std::vector<double>(half), std::vector<double>(half)};
  for (std::size_t k = 0; k < half; ++k) {
    const double even = signal[2 * k], odd = signal[2 * k + 1];
    out.approx[k] = (even + odd) * kInvSqrt2;
    out.detail[k] = (even - odd) * kInvSqrt2;
  }
  return out;
}

std::vector<double> idwt_level(std::span<const double> approx, std::span<const double> detail) {
  if (approx.size() != detail.size())
    throw Error(ErrorCode::LengthMismatch, "approximation and detail lengths differ");
  std::vector<double> out(2 * approx.size());
  for (std::size_t k = 0; k < approx.size(); ++k) {
    out[2 * k] = (approx[k] + detail[k]) * kInvSqrt2;
    out[2 * k + 1] = (approx[k] - detail[k]) * kInvSqrt2;
  }
  return out;
}

DwtTree dwt_multi(std::span<const double> signal, int levels) {
  if (levels < 1) throw Error(ErrorCode::BadParameter, "DWT needs at least one level");
  const std::size_t block = std::size_t{1} << levels;
  if (signal.empty() || signal.size() % block != 0)
    throw Error(ErrorCode::IndivisibleLength,
                "length " + std::to_string(signal.size()) + " not divisible by 2^" + std::to_string(levels));
  DwtTree tree;
  tree.levels = levels;
  tree.approx.assign(signal.begin(), signal.end());
  for (int l = 0; l < levels; ++l) {
    auto step = dwt_level(tree.approx);
    tree.details.push_back(std::move(step.detail));
    tree.approx = std::move(step.approx);
  }
  return tree;
}

std::vector<double> idwt_multi(const DwtTree& tree) {
  if (tree.levels < 1 || tree.details.size() != static_cast<std::size_t>(tree.levels))
    throw Error(ErrorCode::LengthMismatch, "detail count does not match level count");
  std::vector<double> current = tree.approx;
  for (int l = tree.levels - 1; l >= 0; --l) {
    const auto& detail = tree.details[static_cast<std::size_t>(l)];
    if (detail.size() != current.size())
      throw Error(ErrorCode::LengthMismatch, "level " + std::to_string(l + 1) + " detail length mismatch");
    current = idwt_level(current, detail);
  }
  return current;
}

}  // namespace graphsteg
