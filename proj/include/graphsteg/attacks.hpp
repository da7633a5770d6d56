#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "graphsteg/audio_io.hpp"

namespace graphsteg {

enum class AttackKind { None, Awgn, Resample, Requantize, LowPass, HighPass, Scale, Mp3External };

// parameter: SNR dB, intermediate rate Hz, bit depth, cutoff Hz, gain factor
// or bitrate kbps depending on kind. seed is used by Awgn only.
struct AttackSpec {
  AttackKind kind = AttackKind::None;
  double parameter = 0.0;
  std::uint64_t seed = 0;
};

std::string_view attack_name(AttackKind kind);
std::optional<AttackKind> attack_from_name(std::string_view name);

/// Adds Gaussian noise at the requested SNR, then clips. snr_db >= 150 is
/// treated as noiseless and returns the input unchanged.
SpeechSignal awgn(const SpeechSignal& signal, double snr_db, std::uint64_t seed);

/// Linear-interpolation round trip through intermediate_rate_hz.
SpeechSignal resample(const SpeechSignal& signal, int intermediate_rate_hz);

/// Round trip through a signed `bits`-bit grid (4..16), rounding half away from zero.
SpeechSignal requantize(const SpeechSignal& signal, int bits);

/// Hamming-windowed sinc taps with unit DC gain. `taps` must be odd.
std::vector<double> fir_lowpass_taps(double cutoff_hz, int sample_rate_hz, std::size_t taps);

/// Tap count used by lowpass/highpass: 101, or more when the cutoff is so low
/// that 101 taps cannot resolve it (about 4 fs / cutoff, odd, at most 4001).
std::size_t fir_tap_count(double cutoff_hz, int sample_rate_hz);

/// Zero-phase FIR lowpass (group delay removed, edges mirrored).
SpeechSignal lowpass(const SpeechSignal& signal, double cutoff_hz);

/// Exact spectral complement of lowpass: x - lowpass(x). Cutoffs below 1 Hz
/// return the input unchanged.
SpeechSignal highpass(const SpeechSignal& signal, double cutoff_hz);

/// Multiplies by factor and clips to [-1, 1].
SpeechSignal scale(const SpeechSignal& signal, double factor);

/// Round trip through an external MP3 encoder/decoder. The command template
/// is run by the shell after substituting {in}, {out} and {bitrate}; an empty
/// template falls back to $STEGO_MP3_CMD. The decoded result is re-aligned to
/// the input by cross-correlation within +/-1152 samples and cut to length.
SpeechSignal mp3_external(const SpeechSignal& signal, int bitrate_kbps, std::string encoder_command = {});

SpeechSignal apply_attack(const SpeechSignal& signal, const AttackSpec& spec);

}  // namespace graphsteg
