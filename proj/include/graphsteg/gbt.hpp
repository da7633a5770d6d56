#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "graphsteg/linalg.hpp"

namespace graphsteg {

// Path graph where each node links to its first neighbours with weight w1
// and its second neighbours with weight w2. No wraparound.
struct GraphSpec {
  std::size_t n = 20;
  double w1 = 1.0;
  double w2 = 0.3;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

struct GbtBasis {
  Matrix v;                          // columns are Laplacian eigenvectors
  std::vector<double> eigenvalues;   // ascending
};

Matrix build_adjacency(const GraphSpec& spec);

/// L = D - A; degrees are summed from the same entries so rows sum to zero.
Matrix laplacian(const Matrix& adjacency);

/// Eigenbasis of the graph Laplacian. Computed once per distinct spec and
/// shared; safe to call from several threads.
std::shared_ptr<const GbtBasis> gbt_basis(const GraphSpec& spec);

/// c = V^T s
std::vector<double> gbt_forward(const GbtBasis& basis, std::span<const double> s);

/// s = V c
std::vector<double> gbt_inverse(const GbtBasis& basis, std::span<const double> c);

}  // namespace graphsteg
