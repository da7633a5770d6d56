#include "graphsteg/embedder.hpp"

#include <string>

#include "graphsteg/error.hpp"

namespace graphsteg {

void EmbedParams::validate() const {
  if (!(alpha > 0.0)) throw Error(ErrorCode::BadParameter, "alpha must be positive");
  if (dwt_levels < 1 || dwt_levels > 16) throw Error(ErrorCode::BadParameter, "dwt_levels out of range");
  if (graph.n < 3 || !(graph.w1 > 0.0) || !(graph.w2 >= 0.0))
    throw Error(ErrorCode::BadParameter, "graph needs n >= 3, w1 > 0, w2 >= 0");
  const std::size_t block = std::size_t{1} << dwt_levels;
  if (frame_len % block != 0 || frame_len / block != graph.n)
    throw Error(ErrorCode::BadParameter, "frame_len / 2^dwt_levels must equal graph_n");
  if (matrix_dim == 0 || matrix_dim * matrix_dim > graph.n)
    throw Error(ErrorCode::BadParameter, "matrix_dim^2 must not exceed graph_n");
}

FrameAnalysis analyze_frame(std::span<const double> frame, const EmbedParams& params, const GbtBasis& basis) {
  if (frame.size() != params.frame_len)
    throw Error(ErrorCode::LengthMismatch,
                "frame has " + std::to_string(frame.size()) + " samples, expected " + std::to_string(params.frame_len));
  FrameAnalysis a;
  a.matrix_dim = params.matrix_dim;
  a.tree = dwt_multi(frame, params.dwt_levels);
  a.coefficients = gbt_forward(basis, a.tree.approx);
  const std::size_t d = params.matrix_dim;
  Matrix packed(d, d, std::vector<double>(a.coefficients.begin(), a.coefficients.begin() + static_cast<std::ptrdiff_t>(d * d)));
  a.svd = svd_small(packed);
  return a;
}

std::vector<double> synthesize_frame(const FrameAnalysis& analysis, double new_s_max, const GbtBasis& basis) {
  std::vector<double> s = analysis.svd.s;
  s.front() = new_s_max;
  const Matrix rebuilt = analysis.svd.reconstruct(s);
  std::vector<double> coefficients = analysis.coefficients;
  std::copy(rebuilt.entries().begin(), rebuilt.entries().end(), coefficients.begin());
  DwtTree tree = analysis.tree;
  tree.approx = gbt_inverse(basis, coefficients);
  return idwt_multi(tree);
}

EmbeddedFrame embed_bit(const Frame& frame, std::uint8_t bit, const EmbedParams& params, const GbtBasis& basis) {
  const FrameAnalysis analysis = analyze_frame(frame.samples, params, basis);
  const double s_max = analysis.s_max();
  if (!(s_max > params.alpha))
    throw Error(ErrorCode::IneligibleFrame, "frame " + std::to_string(frame.index) + " has s_max " +
                                                std::to_string(s_max) + " <= alpha");
  const double target = bit != 0 ? s_max + params.alpha : s_max - params.alpha;
  return EmbeddedFrame{Frame{frame.index, synthesize_frame(analysis, target, basis)},
                       FrameStegoRecord{frame.index, s_max}};
}

std::uint8_t extract_bit(const Frame& frame, const FrameStegoRecord& record, const EmbedParams& params,
                         const GbtBasis& basis) {
  return analyze_frame(frame.samples, params, basis).s_max() > record.s_max ? 1 : 0;
}

}  // namespace graphsteg
