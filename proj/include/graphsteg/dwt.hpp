#pragma once

#include <span>
#include <vector>

namespace graphsteg {

// Orthonormal Haar decomposition. details[0] is the finest level.
struct DwtTree {
  int levels = 0;
  std::vector<double> approx;
  std::vector<std::vector<double>> details;
};

struct DwtLevel {
  std::vector<double> approx;
  std::vector<double> detail;
};

/// One analysis step: approx[k] = (x[2k] + x[2k+1]) / sqrt2, detail[k] = (x[2k] - x[2k+1]) / sqrt2.
DwtLevel dwt_level(std::span<const double> signal);

/// Inverse of dwt_level.
std::vector<double> idwt_level(std::span<const double> approx, std::span<const double> detail);

/// Recursive decomposition of the approximation branch.
DwtTree dwt_multi(std::span<const double> signal, int levels);

/// Synthesis from the deepest level outward.
std::vector<double> idwt_multi(const DwtTree& tree);

}  // namespace graphsteg
