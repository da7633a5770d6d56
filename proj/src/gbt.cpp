#include "graphsteg/gbt.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "graphsteg/error.hpp"

namespace graphsteg {

Matrix build_adjacency(const GraphSpec& spec) {
  if (spec.n < 3 || !(spec.w1 > 0.0) || !(spec.w2 >= 0.0))
    throw Error(ErrorCode::BadParameter, "graph needs n >= 3, w1 > 0, w2 >= 0");
  Matrix a(spec.n, spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    if (i + 1 < spec.n) a(i, i + 1) = a(i + 1, i) = spec.w1;
    if (i + 2 < spec.n) a(i, i + 2) = a(i + 2, i) = spec.w2;
  }
  return a;
}

Matrix laplacian(const Matrix& adjacency) {
  if (!adjacency.square()) throw Error(ErrorCode::NotSquare, "adjacency must be square");
  const std::size_t n = adjacency.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (adjacency(i, j) != adjacency(j, i)) throw Error(ErrorCode::NotSymmetric, "adjacency is not symmetric");
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      degree += adjacency(i, j);
      l(i, j) = -adjacency(i, j);
    }
    l(i, i) = degree - adjacency(i, i);
  }
  return l;
}

std::shared_ptr<const GbtBasis> gbt_basis(const GraphSpec& spec) {
  using Key = std::tuple<std::size_t, double, double>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const GbtBasis>> cache;

  const Key key{spec.n, spec.w1, spec.w2};
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto evd = symmetric_evd(laplacian(build_adjacency(spec)));
  auto basis = std::make_shared<const GbtBasis>(GbtBasis{std::move(evd.eigenvectors), std::move(evd.eigenvalues)});
  cache.emplace(key, basis);
  return basis;
}

std::vector<double> gbt_forward(const GbtBasis& basis, std::span<const double> s) {
  const std::size_t n = basis.v.rows();
  if (s.size() != n) throw Error(ErrorCode::LengthMismatch, "GBT input length differs from graph size");
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) c[k] += basis.v(i, k) * s[i];
  return c;
}

std::vector<double> gbt_inverse(const GbtBasis& basis, std::span<const double> c) {
  if (c.size() != basis.v.cols()) throw Error(ErrorCode::LengthMismatch, "GBT coefficient count differs from graph size");
  return basis.v * c;
}

}  // namespace graphsteg
