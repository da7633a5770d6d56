#include "graphsteg/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <random>
#include <string>

#include "graphsteg/error.hpp"

namespace graphsteg {
namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

}  // namespace

SpeechSignal decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE"))
    throw Error(ErrorCode::NotWav, "missing RIFF/WAVE header");

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t chunk_size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (tag_is(bytes, pos, "fmt ")) {
      if (chunk_size < 16 || body + 16 > bytes.size()) throw Error(ErrorCode::NotWav, "truncated fmt chunk");
      const std::uint16_t format = read_u16(bytes, body);
      if (format != kFormatPcm)
        throw Error(ErrorCode::UnsupportedFormat, "audio format " + std::to_string(format) + " is not integer PCM");
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      bits = read_u16(bytes, body + 14);
      if (bits != 8 && bits != 16)
        throw Error(ErrorCode::UnsupportedFormat, std::to_string(bits) + "-bit samples");
      if (channels == 0 || rate == 0) throw Error(ErrorCode::NotWav, "bad fmt chunk");
      have_fmt = true;
    } else if (tag_is(bytes, pos, "data")) {
      if (!have_fmt) throw Error(ErrorCode::NotWav, "data chunk before fmt chunk");
      if (channels > 1)
        std::cerr << "warning: " << channels << "-channel input, using channel 0 only\n";
      const std::size_t avail = std::min<std::size_t>(chunk_size, bytes.size() - body);
      const std::size_t bytes_per_sample = bits / 8;
      const std::size_t block = bytes_per_sample * channels;
      SpeechSignal signal;
      signal.sample_rate_hz = static_cast<int>(rate);
      signal.samples.reserve(avail / block);
      for (std::size_t at = body; at + block <= body + avail; at += block) {
        if (bits == 16) {
          signal.samples.push_back(static_cast<std::int16_t>(read_u16(bytes, at)) / 32768.0);
        } else {
          signal.samples.push_back((static_cast<int>(bytes[at]) - 128) / 128.0);
        }
      }
      return signal;
    }
    pos = body + chunk_size + (chunk_size & 1u);
  }
  throw Error(ErrorCode::NotWav, "no data chunk");
}

std::int16_t quantize_pcm16(double sample) {
  const double scaled = std::round(std::clamp(sample, -1.0, 1.0) * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

std::vector<std::uint8_t> encode_wav(const SpeechSignal& signal) {
  if (signal.samples.empty()) throw Error(ErrorCode::IoError, "refusing to write an empty signal");
  const auto data_bytes = static_cast<std::uint32_t>(signal.samples.size() * 2);
  const auto rate = static_cast<std::uint32_t>(signal.sample_rate_hz);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : signal.samples) put_u16(out, static_cast<std::uint16_t>(quantize_pcm16(s)));
  return out;
}

SpeechSignal read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_wav(bytes);
}

void write_wav(const SpeechSignal& signal, const std::filesystem::path& path) {
  const auto bytes = encode_wav(signal);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

FrameSplit split_frames(const SpeechSignal& signal, std::size_t frame_len) {
  if (frame_len < 4 || frame_len % 2 != 0)
    throw Error(ErrorCode::BadParameter, "frame length must be even and at least 4");
  const std::size_t count = signal.samples.size() / frame_len;
  if (count == 0) throw Error(ErrorCode::SignalTooShort, "signal shorter than one frame");
  FrameSplit split;
  split.frames.reserve(count);
  auto it = signal.samples.begin();
  for (std::size_t i = 0; i < count; ++i, it += static_cast<std::ptrdiff_t>(frame_len))
    split.frames.push_back(Frame{i, std::vector<double>(it, it + static_cast<std::ptrdiff_t>(frame_len))});
  split.remainder.assign(it, signal.samples.end());
  return split;
}

SpeechSignal assemble_frames(std::span<const Frame> frames, std::span<const double> remainder, int sample_rate_hz) {
  SpeechSignal out;
  out.sample_rate_hz = sample_rate_hz;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].index != i)
      throw Error(ErrorCode::MissingFrame, "expected frame " + std::to_string(i) + ", got " +
                                               std::to_string(frames[i].index));
    out.samples.insert(out.samples.end(), frames[i].samples.begin(), frames[i].samples.end());
  }
  out.samples.insert(out.samples.end(), remainder.begin(), remainder.end());
  return out;
}

namespace {

enum class Segment { Voiced, Unvoiced, Silence };

// Fills [begin, end) of out with one segment of the given kind.
void render_segment(Segment kind, std::size_t begin, std::size_t end, double rate, double loudness,
                    std::mt19937_64& rng, std::vector<double>& out) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t len = end - begin;
  switch (kind) {
    case Segment::Voiced: {
      const double f0_start = 100.0 + 150.0 * unit(rng);
      const double f0_end = std::clamp(f0_start * (0.9 + 0.2 * unit(rng)), 100.0, 250.0);
      const double amp = loudness * (0.8 + 0.4 * unit(rng));
      const int harmonics = std::max(1, static_cast<int>(1000.0 / f0_start));
      std::vector<double> phase(static_cast<std::size_t>(harmonics));
      for (double& p : phase) p = 2.0 * std::numbers::pi * unit(rng);
      const double ramp = std::min(0.01 * rate, len / 2.0);
      double theta = 0.0;
      for (std::size_t n = 0; n < len; ++n) {
        const double f0 = f0_start + (f0_end - f0_start) * n / static_cast<double>(len);
        theta += 2.0 * std::numbers::pi * f0 / rate;
        double v = 0.0;
        for (int k = 1; k <= harmonics; ++k) v += std::sin(k * theta + phase[static_cast<std::size_t>(k - 1)]) / k;
        double env = 1.0;
        if (n < ramp) env = 0.5 - 0.5 * std::cos(std::numbers::pi * n / ramp);
        if (len - 1 - n < ramp) env = 0.5 - 0.5 * std::cos(std::numbers::pi * (len - 1 - n) / ramp);
        out[begin + n] = amp * env * v;
      }
      break;
    }
    case Segment::Unvoiced: {
      std::normal_distribution<double> noise(0.0, 0.004 + 0.006 * unit(rng));
      for (std::size_t n = begin; n < end; ++n) out[n] = noise(rng);
      break;
    }
    case Segment::Silence: {
      std::normal_distribution<double> noise(0.0, 0.0003);
      for (std::size_t n = begin; n < end; ++n) out[n] = noise(rng);
      break;
    }
  }
}

}  // namespace

std::vector<SpeechSignal> synth_voiced_corpus(int count, double duration_s, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorCode::BadParameter, "corpus count must be at least 1");
  constexpr int kRate = 8000;
  std::mt19937_64 master(seed);
  std::vector<SpeechSignal> corpus;
  corpus.reserve(static_cast<std::size_t>(count));
  const auto total = static_cast<std::size_t>(std::llround(duration_s * kRate));
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(master());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SpeechSignal sig;
    sig.sample_rate_hz = kRate;
    sig.samples.assign(total, 0.0);
    // Utterance: leading silence, then voiced runs separated by unvoiced or
    // silent gaps, then trailing silence.
    // Per-speaker loudness, log-uniform over a 3:1 range.
    const double loudness = 0.03 * std::pow(3.0, unit(rng));
    std::size_t pos = 0;
    auto place = [&](Segment kind, double seconds) {
      const std::size_t end = std::min(total, pos + static_cast<std::size_t>(seconds * kRate));
      if (end > pos) render_segment(kind, pos, end, kRate, loudness, rng, sig.samples);
      pos = end;
    };
    place(Segment::Silence, 0.03 + 0.05 * unit(rng));
    while (pos < total) {
      place(Segment::Voiced, 0.15 + 0.2 * unit(rng));
      place(unit(rng) < 0.6 ? Segment::Unvoiced : Segment::Silence, 0.03 + 0.06 * unit(rng));
    }
    corpus.push_back(std::move(sig));
  }
  return corpus;
}

}  // namespace graphsteg
