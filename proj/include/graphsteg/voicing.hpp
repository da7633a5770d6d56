#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "graphsteg/audio_io.hpp"

namespace graphsteg {

enum class VoicingLabel { Voiced, Unvoiced };

struct VoicingFeatures {
  std::size_t zcc = 0;
  double ste = 0.0;
  // zcc / ste; only meaningful when ste > 0.
  double ze() const { return static_cast<double>(zcc) / ste; }
};

/// Symmetric Hamming window, w[n] = 0.54 - 0.46 cos(2 pi n / (L - 1)), n = 0..L-1.
std::vector<double> hamming_window(std::size_t length);

/// Zero-crossing count over the frame's interior sample pairs. Zero counts
/// as negative, so a run of zeros never crosses.
std::size_t zcc(std::span<const double> frame);

/// Windowed short-time energy, sum of (f[n] w[n])^2.
double ste(std::span<const double> frame, std::span<const double> window);

VoicingFeatures voicing_features(std::span<const double> frame, std::span<const double> window);

/// Voiced iff zcc is below the per-signal mean zcc and ste is above the mean ste.
std::vector<VoicingLabel> classify_frames(std::span<const Frame> frames);
std::vector<VoicingLabel> classify_features(std::span<const VoicingFeatures> features);

/// Indices of voiced frames, ascending by ZE with ties on frame index.
std::vector<std::size_t> rank_by_ze(std::span<const Frame> frames, std::span<const VoicingLabel> labels);
std::vector<std::size_t> rank_features_by_ze(std::span<const VoicingFeatures> features,
                                             std::span<const VoicingLabel> labels);

}  // namespace graphsteg
