#include "graphsteg/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <system_error>

#include "graphsteg/error.hpp"
#include "graphsteg/voicing.hpp"

namespace graphsteg {

Message message_from_bitstring(std::string_view text) {
  Message m;
  m.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(ErrorCode::BadParameter, "message bits must be '0' or '1'");
    m.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return m;
}

std::string message_to_bitstring(const Message& message) {
  std::string out;
  out.reserve(message.bits.size());
  for (auto b : message.bits) out.push_back(b != 0 ? '1' : '0');
  return out;
}

Message message_from_bytes(std::string_view bytes) {
  Message m;
  m.bits.reserve(bytes.size() * 8);
  for (char c : bytes) {
    const auto byte = static_cast<unsigned char>(c);
    for (int bit = 7; bit >= 0; --bit) m.bits.push_back(static_cast<std::uint8_t>((byte >> bit) & 1u));
  }
  return m;
}

void StegoKey::validate() const {
  if (records.empty()) throw Error(ErrorCode::MalformedKey, "key has no records");
  std::set<std::size_t> seen;
  for (const auto& r : records) {
    if (!seen.insert(r.frame_index).second)
      throw Error(ErrorCode::MalformedKey, "frame index " + std::to_string(r.frame_index) + " repeats");
    if (!(r.s_max > params.alpha))
      throw Error(ErrorCode::MalformedKey, "record for frame " + std::to_string(r.frame_index) + " has s_max <= alpha");
  }
}

EmbedResult embed(const SpeechSignal& cover, const Message& message, const EmbedParams& params) {
  params.validate();
  if (message.bits.empty()) throw Error(ErrorCode::BadParameter, "message is empty");
  const auto basis = gbt_basis(params.graph);
  FrameSplit split = split_frames(cover, params.frame_len);
  const auto labels = classify_frames(split.frames);

  EmbedResult result;
  result.key.params = params;
  for (auto l : labels) result.voiced_frames += l == VoicingLabel::Voiced ? 1 : 0;
  const std::size_t needed = message.bits.size();
  auto insufficient = [&](std::size_t have) {
    return Error(ErrorCode::InsufficientVoicedFrames,
                 "insufficient voiced frames (have " + std::to_string(have) + ", need " + std::to_string(needed) + ")");
  };
  if (result.voiced_frames == 0) throw insufficient(0);

  const auto ranked = rank_by_ze(split.frames, labels);
  std::size_t next_bit = 0;
  std::size_t eligible = 0;
  for (std::size_t idx : ranked) {
    if (next_bit == needed) break;
    Frame& frame = split.frames[idx];
    const FrameAnalysis analysis = analyze_frame(frame.samples, params, *basis);
    if (!(analysis.s_max() > params.alpha)) continue;
    ++eligible;
    const std::uint8_t bit = message.bits[next_bit++];
    const double target = bit != 0 ? analysis.s_max() + params.alpha : analysis.s_max() - params.alpha;
    frame.samples = synthesize_frame(analysis, target, *basis);
    result.key.records.push_back(FrameStegoRecord{idx, analysis.s_max()});
  }
  if (next_bit < needed) throw insufficient(eligible);

  result.stego = assemble_frames(split.frames, split.remainder, cover.sample_rate_hz);
  return result;
}

Message extract(const SpeechSignal& stego, const StegoKey& key) {
  key.params.validate();
  key.validate();
  const auto basis = gbt_basis(key.params.graph);
  const std::size_t frame_count = stego.samples.size() / key.params.frame_len;
  Message out;
  out.bits.reserve(key.records.size());
  for (const auto& record : key.records) {
    if (record.frame_index >= frame_count)
      throw Error(ErrorCode::KeyOutOfRange, "frame " + std::to_string(record.frame_index) + " beyond signal of " +
                                                std::to_string(frame_count) + " frames");
    const auto begin = stego.samples.begin() + static_cast<std::ptrdiff_t>(record.frame_index * key.params.frame_len);
    Frame frame{record.frame_index,
                std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(key.params.frame_len))};
    out.bits.push_back(extract_bit(frame, record, key.params, *basis));
  }
  return out;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedKey, why); }

template <typename T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty())
    malformed(std::string("bad ") + what + " value '" + std::string(text) + "'");
  return value;
}

double parse_real(std::string_view text, const char* what) {
  const double v = parse_number<double>(text, what);
  if (!std::isfinite(v)) malformed(std::string("non-finite ") + what);
  return v;
}

std::string_view field(std::string_view line, std::string_view name) {
  if (line.size() <= name.size() || line.substr(0, name.size()) != name || line[name.size()] != '=')
    malformed("expected '" + std::string(name) + "=...', got '" + std::string(line) + "'");
  return line.substr(name.size() + 1);
}

}  // namespace

std::string serialize_key(const StegoKey& key) {
  std::ostringstream out;
  out << "STEGKEY v" << key.version << '\n'
      << "frame_len=" << key.params.frame_len << '\n'
      << "dwt_levels=" << key.params.dwt_levels << '\n'
      << "alpha=" << format_double(key.params.alpha) << '\n'
      << "graph_n=" << key.params.graph.n << '\n'
      << "w1=" << format_double(key.params.graph.w1) << '\n'
      << "w2=" << format_double(key.params.graph.w2) << '\n'
      << "matrix_dim=" << key.params.matrix_dim << '\n'
      << "n_bits=" << key.records.size() << '\n';
  for (const auto& r : key.records) out << r.frame_index << ' ' << format_double(r.s_max) << '\n';
  return out.str();
}

StegoKey parse_key(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    if (nl == std::string_view::npos) malformed("last line is not LF-terminated (truncated file?)");
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  if (lines.empty()) malformed("empty key");

  constexpr std::string_view kMagic = "STEGKEY v";
  if (lines[0].substr(0, kMagic.size()) != kMagic) malformed("missing STEGKEY header");
  StegoKey key;
  key.version = parse_number<int>(lines[0].substr(kMagic.size()), "version");
  if (key.version != kKeyFormatVersion)
    throw Error(ErrorCode::UnsupportedVersion, "key format v" + std::to_string(key.version));
  if (lines.size() < 9) malformed("header truncated");

  key.params.frame_len = parse_number<std::size_t>(field(lines[1], "frame_len"), "frame_len");
  key.params.dwt_levels = parse_number<int>(field(lines[2], "dwt_levels"), "dwt_levels");
  key.params.alpha = parse_real(field(lines[3], "alpha"), "alpha");
  key.params.graph.n = parse_number<std::size_t>(field(lines[4], "graph_n"), "graph_n");
  key.params.graph.w1 = parse_real(field(lines[5], "w1"), "w1");
  key.params.graph.w2 = parse_real(field(lines[6], "w2"), "w2");
  key.params.matrix_dim = parse_number<std::size_t>(field(lines[7], "matrix_dim"), "matrix_dim");
  const auto n_bits = parse_number<std::size_t>(field(lines[8], "n_bits"), "n_bits");
  try {
    key.params.validate();
  } catch (const Error& e) {
    malformed(std::string("inconsistent parameters: ") + e.what());
  }
  if (lines.size() != 9 + n_bits)
    malformed("expected " + std::to_string(n_bits) + " records, found " + std::to_string(lines.size() - 9) + " lines");

  for (std::size_t i = 9; i < lines.size(); ++i) {
    const auto line = lines[i];
    const auto space = line.find(' ');
    if (space == std::string_view::npos) malformed("record line without separator");
    key.records.push_back(FrameStegoRecord{parse_number<std::size_t>(line.substr(0, space), "frame index"),
                                           parse_real(line.substr(space + 1), "s_max")});
  }
  key.validate();
  return key;
}

}  // namespace graphsteg
