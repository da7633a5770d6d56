#include "graphsteg/voicing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "graphsteg/error.hpp"

namespace graphsteg {

std::vector<double> hamming_window(std::size_t length) {
  if (length < 2) throw Error(ErrorCode::LengthTooSmall, "Hamming window needs at least 2 points");
  std::vector<double> w(length);
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n) w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / denom);
  // Force exact symmetry; cos() is not guaranteed to be mirror-exact.
  for (std::size_t n = 0; n < length / 2; ++n) w[length - 1 - n] = w[n];
  return w;
}

std::size_t zcc(std::span<const double> frame) {
  std::size_t count = 0;
  for (std::size_t n = 1; n < frame.size(); ++n) {
    if ((frame[n] > 0.0) != (frame[n - 1] > 0.0)) ++count;
  }
  return count;
}

double ste(std::span<const double> frame, std::span<const double> window) {
  if (frame.size() != window.size())
    throw Error(ErrorCode::LengthMismatch, "window length differs from frame length");
  double energy = 0.0;
  for (std::size_t n = 0; n < frame.size(); ++n) {
    const double v = frame[n] * window[n];
    energy += v * v;
  }
  return energy;
}

VoicingFeatures voicing_features(std::span<const double> frame, std::span<const double> window) {
  return VoicingFeatures{zcc(frame), ste(frame, window)};
}

std::vector<VoicingLabel> classify_features(std::span<const VoicingFeatures> features) {
  if (features.size() < 2) throw Error(ErrorCode::TooFewFrames, "need at least two frames to classify");
  double zcc_sum = 0.0, ste_sum = 0.0;
  for (const auto& f : features) {
    zcc_sum += static_cast<double>(f.zcc);
    ste_sum += f.ste;
  }
  const double n = static_cast<double>(features.size());
  const double zcc_mean = zcc_sum / n;
  const double ste_mean = ste_sum / n;
  std::vector<VoicingLabel> labels;
  labels.reserve(features.size());
  for (const auto& f : features) {
    const bool voiced = static_cast<double>(f.zcc) < zcc_mean && f.ste > ste_mean;
    labels.push_back(voiced ? VoicingLabel::Voiced : VoicingLabel::Unvoiced);
  }
  return labels;
}

namespace {

std::vector<VoicingFeatures> frame_features(std::span<const Frame> frames) {
  std::vector<VoicingFeatures> features;
  if (frames.empty()) return features;
  const auto window = hamming_window(frames.front().samples.size());
  features.reserve(frames.size());
  for (const auto& f : frames) features.push_back(voicing_features(f.samples, window));
  return features;
}

}  // namespace

std::vector<VoicingLabel> classify_frames(std::span<const Frame> frames) {
  if (frames.size() < 2) throw Error(ErrorCode::TooFewFrames, "need at least two frames to classify");
  return classify_features(frame_features(frames));
}

std::vector<std::size_t> rank_features_by_ze(std::span<const VoicingFeatures> features,
                                             std::span<const VoicingLabel> labels) {
  if (features.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "labels not aligned to frames");
  std::vector<std::size_t> voiced;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == VoicingLabel::Voiced) voiced.push_back(i);
  }
  if (voiced.empty()) throw Error(ErrorCode::NoVoicedFrames, "no voiced frames to rank");
  std::stable_sort(voiced.begin(), voiced.end(),
                   [&](std::size_t a, std::size_t b) { return features[a].ze() < features[b].ze(); });
  return voiced;
}

std::vector<std::size_t> rank_by_ze(std::span<const Frame> frames, std::span<const VoicingLabel> labels) {
  if (frames.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "labels not aligned to frames");
  const auto features = frame_features(frames);
  auto order = rank_features_by_ze(features, labels);
  // Report frame indices as carried by the frames themselves.
  for (auto& i : order) i = frames[i].index;
  return order;
}

}  // namespace graphsteg
