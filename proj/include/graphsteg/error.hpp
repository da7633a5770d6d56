#pragma once

#include <stdexcept>
#include <string>

namespace graphsteg {

enum class ErrorCode {
  NotWav,
  UnsupportedFormat,
  IoError,
  SignalTooShort,
  MissingFrame,
  LengthTooSmall,
  LengthMismatch,
  TooFewFrames,
  NoVoicedFrames,
  NotSymmetric,
  NotSquare,
  NoConvergence,
  OddLength,
  IndivisibleLength,
  IneligibleFrame,
  InsufficientVoicedFrames,
  KeyOutOfRange,
  MalformedKey,
  UnsupportedVersion,
  SilentSignal,
  BadRate,
  BadBits,
  BadCutoff,
  BadParameter,
  EncoderUnavailable,
  EncoderFailed,
};

const char* to_string(ErrorCode code);

// Every failure in the library is reported as an Error carrying one of the
// codes above; callers that care switch on code(), others just print what().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphsteg
