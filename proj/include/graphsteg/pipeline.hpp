#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graphsteg/audio_io.hpp"
#include "graphsteg/embedder.hpp"

namespace graphsteg {

struct Message {
  std::vector<std::uint8_t> bits;  // each 0 or 1

  friend bool operator==(const Message&, const Message&) = default;
};

/// Parses a string of '0'/'1' characters. Throws BadParameter on anything else.
Message message_from_bitstring(std::string_view text);
std::string message_to_bitstring(const Message& message);
/// Expands bytes most-significant bit first.
Message message_from_bytes(std::string_view bytes);

inline constexpr int kKeyFormatVersion = 1;

struct StegoKey {
  int version = kKeyFormatVersion;
  EmbedParams params;
  std::vector<FrameStegoRecord> records;  // in message bit order

  /// Throws MalformedKey when records are empty, frame indices repeat or an
  /// s_max is not above alpha.
  void validate() const;

  friend bool operator==(const StegoKey&, const StegoKey&) = default;
};

struct EmbedResult {
  SpeechSignal stego;
  StegoKey key;
  std::size_t voiced_frames = 0;
};

/// Hides one bit per voiced frame, lowest ZE first; frames with s_max <= alpha
/// are passed over. Everything else in the cover is copied verbatim.
EmbedResult embed(const SpeechSignal& cover, const Message& message, const EmbedParams& params);

Message extract(const SpeechSignal& stego, const StegoKey& key);

std::string serialize_key(const StegoKey& key);
StegoKey parse_key(std::string_view text);

}  // namespace graphsteg
