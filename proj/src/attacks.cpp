#include "graphsteg/attacks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <random>
#include <unistd.h>

#include "graphsteg/error.hpp"
#include "graphsteg/voicing.hpp"

namespace graphsteg {

std::string_view attack_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::None: return "none";
    case AttackKind::Awgn: return "awgn";
    case AttackKind::Resample: return "resample";
    case AttackKind::Requantize: return "requantize";
    case AttackKind::LowPass: return "lowpass";
    case AttackKind::HighPass: return "highpass";
    case AttackKind::Scale: return "scale";
    case AttackKind::Mp3External: return "mp3";
  }
  return "unknown";
}

std::optional<AttackKind> attack_from_name(std::string_view name) {
  for (auto kind : {AttackKind::None, AttackKind::Awgn, AttackKind::Resample, AttackKind::Requantize,
                    AttackKind::LowPass, AttackKind::HighPass, AttackKind::Scale, AttackKind::Mp3External})
    if (attack_name(kind) == name) return kind;
  return std::nullopt;
}

namespace {

void clip(std::vector<double>& samples) {
  for (double& s : samples) s = std::clamp(s, -1.0, 1.0);
}

double sample_at(std::span<const double> x, double position) {
  if (position <= 0.0) return x.front();
  const double last = static_cast<double>(x.size() - 1);
  if (position >= last) return x.back();
  const auto i = static_cast<std::size_t>(position);
  const double frac = position - static_cast<double>(i);
  return x[i] + frac * (x[i + 1] - x[i]);
}

std::vector<double> linear_resample(std::span<const double> x, double from_rate, double to_rate, std::size_t out_len) {
  std::vector<double> y(out_len);
  const double step = from_rate / to_rate;
  for (std::size_t j = 0; j < out_len; ++j) y[j] = sample_at(x, static_cast<double>(j) * step);
  return y;
}

// Index into [0, n) with whole-sample mirroring at both ends.
std::size_t mirror(std::ptrdiff_t i, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  i %= period;
  if (i < 0) i += period;
  if (i >= static_cast<std::ptrdiff_t>(n)) i = period - i;
  return static_cast<std::size_t>(i);
}

std::vector<double> zero_phase_filter(std::span<const double> x, std::span<const double> taps) {
  const auto half = static_cast<std::ptrdiff_t>(taps.size() / 2);
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < taps.size(); ++k)
      acc += taps[k] * x[mirror(static_cast<std::ptrdiff_t>(n) + half - static_cast<std::ptrdiff_t>(k), x.size())];
    y[n] = acc;
  }
  return y;
}

void check_nonempty(const SpeechSignal& s) {
  if (s.samples.empty()) throw Error(ErrorCode::LengthMismatch, "attack input is empty");
}

}  // namespace

SpeechSignal awgn(const SpeechSignal& signal, double snr_db, std::uint64_t seed) {
  check_nonempty(signal);
  double power = 0.0;
  for (double s : signal.samples) power += s * s;
  power /= static_cast<double>(signal.samples.size());
  if (power <= 0.0) throw Error(ErrorCode::SilentSignal, "cannot set an SNR against a silent signal");
  if (snr_db >= 150.0) return signal;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(power / std::pow(10.0, snr_db / 10.0)));
  SpeechSignal out = signal;
  for (double& s : out.samples) s += noise(rng);
  clip(out.samples);
  return out;
}

SpeechSignal resample(const SpeechSignal& signal, int intermediate_rate_hz) {
  check_nonempty(signal);
  if (intermediate_rate_hz <= 0 || signal.sample_rate_hz <= 0)
    throw Error(ErrorCode::BadRate, "sample rates must be positive");
  if (intermediate_rate_hz == signal.sample_rate_hz) return signal;
  const double native = signal.sample_rate_hz, mid = intermediate_rate_hz;
  const auto mid_len = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(signal.samples.size()) * mid / native)));
  const auto up = linear_resample(signal.samples, native, mid, mid_len);
  SpeechSignal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.samples = linear_resample(up, mid, native, signal.samples.size());
  return out;
}

SpeechSignal requantize(const SpeechSignal& signal, int bits) {
  if (bits < 4 || bits > 16) throw Error(ErrorCode::BadBits, "bit depth must be within [4, 16]");
  const double levels = std::ldexp(1.0, bits - 1);
  SpeechSignal out = signal;
  for (double& s : out.samples) s = std::clamp(std::round(s * levels), -levels, levels - 1.0) / levels;
  return out;
}

std::size_t fir_tap_count(double cutoff_hz, int sample_rate_hz) {
  constexpr std::size_t kBaseTaps = 101;
  constexpr std::size_t kMaxTaps = 4001;
  if (!(cutoff_hz > 0.0)) return kBaseTaps;
  const double wanted = std::ceil(4.0 * sample_rate_hz / cutoff_hz);
  if (wanted <= static_cast<double>(kBaseTaps)) return kBaseTaps;
  auto taps = static_cast<std::size_t>(std::min(wanted, static_cast<double>(kMaxTaps)));
  return taps | 1u;
}

std::vector<double> fir_lowpass_taps(double cutoff_hz, int sample_rate_hz, std::size_t taps) {
  if (taps % 2 == 0) throw Error(ErrorCode::BadParameter, "FIR length must be odd");
  const double fc = cutoff_hz / sample_rate_hz;  // cycles per sample
  const auto window = hamming_window(taps);
  const double mid = static_cast<double>(taps / 2);
  std::vector<double> h(taps);
  double sum = 0.0;
  for (std::size_t n = 0; n < taps; ++n) {
    const double t = static_cast<double>(n) - mid;
    const double sinc = t == 0.0 ? 2.0 * fc : std::sin(2.0 * std::numbers::pi * fc * t) / (std::numbers::pi * t);
    h[n] = sinc * window[n];
    sum += h[n];
  }
  for (double& v : h) v /= sum;
  return h;
}

SpeechSignal lowpass(const SpeechSignal& signal, double cutoff_hz) {
  check_nonempty(signal);
  const double nyquist = signal.sample_rate_hz / 2.0;
  if (!(cutoff_hz > 0.0) || cutoff_hz > nyquist) throw Error(ErrorCode::BadCutoff, "lowpass cutoff outside (0, Nyquist]");
  const auto taps = fir_lowpass_taps(cutoff_hz, signal.sample_rate_hz, fir_tap_count(cutoff_hz, signal.sample_rate_hz));
  SpeechSignal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.samples = zero_phase_filter(signal.samples, taps);
  clip(out.samples);
  return out;
}

SpeechSignal highpass(const SpeechSignal& signal, double cutoff_hz) {
  check_nonempty(signal);
  const double nyquist = signal.sample_rate_hz / 2.0;
  if (!(cutoff_hz > 0.0) || cutoff_hz >= nyquist) throw Error(ErrorCode::BadCutoff, "highpass cutoff outside (0, Nyquist)");
  if (cutoff_hz < 1.0) return signal;
  const auto taps = fir_lowpass_taps(cutoff_hz, signal.sample_rate_hz, fir_tap_count(cutoff_hz, signal.sample_rate_hz));
  const auto low = zero_phase_filter(signal.samples, taps);
  SpeechSignal out = signal;
  for (std::size_t n = 0; n < out.samples.size(); ++n) out.samples[n] -= low[n];
  clip(out.samples);
  return out;
}

SpeechSignal scale(const SpeechSignal& signal, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorCode::BadParameter, "scale factor must be positive");
  SpeechSignal out = signal;
  for (double& s : out.samples) s *= factor;
  clip(out.samples);
  return out;
}

namespace {

void replace_all(std::string& text, std::string_view from, const std::string& to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size()))
    text.replace(pos, from.size(), to);
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

// Removes the temp files on scope exit.
struct TempPaths {
  std::filesystem::path in, out;
  ~TempPaths() {
    std::error_code ec;
    std::filesystem::remove(in, ec);
    std::filesystem::remove(out, ec);
  }
};

}  // namespace

SpeechSignal mp3_external(const SpeechSignal& signal, int bitrate_kbps, std::string encoder_command) {
  check_nonempty(signal);
  if (bitrate_kbps <= 0) throw Error(ErrorCode::BadParameter, "bitrate must be positive");
  if (encoder_command.empty()) {
    if (const char* env = std::getenv("STEGO_MP3_CMD")) encoder_command = env;
  }
  if (encoder_command.empty())
    throw Error(ErrorCode::EncoderUnavailable, "no MP3 command configured (set STEGO_MP3_CMD)");

  static std::atomic<unsigned> counter{0};
  const auto stem = "graphsteg-mp3-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  const auto dir = std::filesystem::temp_directory_path();
  TempPaths tmp{dir / (stem + "-in.wav"), dir / (stem + "-out.wav")};
  write_wav(signal, tmp.in);

  std::string command = encoder_command;
  replace_all(command, "{in}", shell_quote(tmp.in.string()));
  replace_all(command, "{out}", shell_quote(tmp.out.string()));
  replace_all(command, "{bitrate}", std::to_string(bitrate_kbps));
  const int status = std::system(command.c_str());
  if (status != 0) {
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
      throw Error(ErrorCode::EncoderUnavailable, "MP3 command not found: " + encoder_command);
    throw Error(ErrorCode::EncoderFailed, "MP3 command exited with status " + std::to_string(status));
  }
  if (!std::filesystem::exists(tmp.out)) throw Error(ErrorCode::EncoderFailed, "MP3 command produced no output file");

  SpeechSignal decoded = read_wav(tmp.out);
  if (decoded.samples.empty()) throw Error(ErrorCode::EncoderFailed, "decoded signal is empty");
  if (decoded.sample_rate_hz != signal.sample_rate_hz) {
    const auto len = static_cast<std::size_t>(std::llround(static_cast<double>(decoded.samples.size()) *
                                                            signal.sample_rate_hz / decoded.sample_rate_hz));
    decoded.samples = linear_resample(decoded.samples, decoded.sample_rate_hz, signal.sample_rate_hz, std::max<std::size_t>(len, 1));
  }

  // Codecs add encoder/decoder delay; find it by cross-correlation.
  constexpr std::ptrdiff_t kMaxLag = 1152;
  const auto& x = signal.samples;
  const auto& y = decoded.samples;
  const auto nx = static_cast<std::ptrdiff_t>(x.size()), ny = static_cast<std::ptrdiff_t>(y.size());
  std::ptrdiff_t best_lag = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t lag = -kMaxLag; lag <= kMaxLag; ++lag) {
    double acc = 0.0;
    for (std::ptrdiff_t n = std::max<std::ptrdiff_t>(0, -lag); n < nx && n + lag < ny; ++n) acc += x[n] * y[n + lag];
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  SpeechSignal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.samples.assign(x.size(), 0.0);
  for (std::ptrdiff_t n = 0; n < nx; ++n) {
    const std::ptrdiff_t m = n + best_lag;
    if (m >= 0 && m < ny) out.samples[static_cast<std::size_t>(n)] = y[static_cast<std::size_t>(m)];
  }
  return out;
}

SpeechSignal apply_attack(const SpeechSignal& signal, const AttackSpec& spec) {
  switch (spec.kind) {
    case AttackKind::None: return signal;
    case AttackKind::Awgn: return awgn(signal, spec.parameter, spec.seed);
    case AttackKind::Resample: return resample(signal, static_cast<int>(std::lround(spec.parameter)));
    case AttackKind::Requantize: return requantize(signal, static_cast<int>(std::lround(spec.parameter)));
    case AttackKind::LowPass: return lowpass(signal, spec.parameter);
    case AttackKind::HighPass: return highpass(signal, spec.parameter);
    case AttackKind::Scale: return scale(signal, spec.parameter);
    case AttackKind::Mp3External: return mp3_external(signal, static_cast<int>(std::lround(spec.parameter)));
  }
  throw Error(ErrorCode::BadParameter, "unknown attack kind");
}

}  // namespace graphsteg
