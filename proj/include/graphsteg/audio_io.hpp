#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace graphsteg {

// Mono carrier signal, samples nominally in [-1, 1].
struct SpeechSignal {
  std::vector<double> samples;
  int sample_rate_hz = 8000;
};

struct Frame {
  std::size_t index = 0;
  std::vector<double> samples;
};

// Result of framing: full frames plus the verbatim tail that never hosts data.
struct FrameSplit {
  std::vector<Frame> frames;
  std::vector<double> remainder;
};

/// Reads a PCM WAV file (8- or 16-bit). Multi-channel input keeps channel 0.
SpeechSignal read_wav(const std::filesystem::path& path);

/// Writes 16-bit mono PCM; samples are clipped to [-1, 1] first.
void write_wav(const SpeechSignal& signal, const std::filesystem::path& path);

/// In-memory variants of the WAV codec used by the file functions.
SpeechSignal decode_wav(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_wav(const SpeechSignal& signal);

/// Quantizes one sample to the 16-bit grid used by write_wav.
std::int16_t quantize_pcm16(double sample);

FrameSplit split_frames(const SpeechSignal& signal, std::size_t frame_len);

/// Concatenates frames (which must be contiguous from index 0) and the remainder.
SpeechSignal assemble_frames(std::span<const Frame> frames, std::span<const double> remainder,
                             int sample_rate_hz = 8000);

/// Deterministic stand-in for a speech corpus: each 8 kHz signal alternates
/// harmonic voiced segments, low-level noise (unvoiced) and near-silence.
std::vector<SpeechSignal> synth_voiced_corpus(int count, double duration_s, std::uint64_t seed);

}  // namespace graphsteg
