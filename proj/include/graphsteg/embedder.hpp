#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graphsteg/audio_io.hpp"
#include "graphsteg/dwt.hpp"
#include "graphsteg/gbt.hpp"
#include "graphsteg/linalg.hpp"

namespace graphsteg {

struct EmbedParams {
  double alpha = 0.05;
  std::size_t frame_len = 80;
  int dwt_levels = 2;
  GraphSpec graph{};
  std::size_t matrix_dim = 4;

  /// Throws BadParameter unless alpha > 0, frame_len / 2^levels == graph.n
  /// and matrix_dim^2 <= graph.n.
  void validate() const;

  friend bool operator==(const EmbedParams&, const EmbedParams&) = default;
};

struct FrameStegoRecord {
  std::size_t frame_index = 0;
  double s_max = 0.0;  // largest singular value before embedding

  friend bool operator==(const FrameStegoRecord&, const FrameStegoRecord&) = default;
};

// Forward chain of one frame: Haar DWT, GBT of the deepest approximation,
// leading coefficients packed row-major into a square matrix, SVD.
struct FrameAnalysis {
  DwtTree tree;
  std::vector<double> coefficients;
  SvdResult svd;
  std::size_t matrix_dim = 0;

  double s_max() const { return svd.s.front(); }
};

FrameAnalysis analyze_frame(std::span<const double> frame, const EmbedParams& params, const GbtBasis& basis);

/// Inverse chain with the largest singular value replaced by `new_s_max`.
/// U, V and every other coefficient are reused as analysed.
std::vector<double> synthesize_frame(const FrameAnalysis& analysis, double new_s_max, const GbtBasis& basis);

struct EmbeddedFrame {
  Frame stego_frame;
  FrameStegoRecord record;
};

/// Moves the frame's largest singular value by +alpha (bit 1) or -alpha
/// (bit 0). Frames whose s_max <= alpha are rejected with IneligibleFrame.
EmbeddedFrame embed_bit(const Frame& frame, std::uint8_t bit, const EmbedParams& params, const GbtBasis& basis);

/// 1 iff the recomputed largest singular value exceeds record.s_max.
std::uint8_t extract_bit(const Frame& frame, const FrameStegoRecord& record, const EmbedParams& params,
                         const GbtBasis& basis);

}  // namespace graphsteg
