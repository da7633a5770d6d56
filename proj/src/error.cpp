#include "graphsteg/error.hpp"

namespace graphsteg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotWav: return "NotWav";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SignalTooShort: return "SignalTooShort";
    case ErrorCode::MissingFrame: return "MissingFrame";
    case ErrorCode::LengthTooSmall: return "LengthTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooFewFrames: return "TooFewFrames";
    case ErrorCode::NoVoicedFrames: return "NoVoicedFrames";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OddLength: return "OddLength";
    case ErrorCode::IndivisibleLength: return "IndivisibleLength";
    case ErrorCode::IneligibleFrame: return "IneligibleFrame";
    case ErrorCode::InsufficientVoicedFrames: return "InsufficientVoicedFrames";
    case ErrorCode::KeyOutOfRange: return "KeyOutOfRange";
    case ErrorCode::MalformedKey: return "MalformedKey";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::SilentSignal: return "SilentSignal";
    case ErrorCode::BadRate: return "BadRate";
    case ErrorCode::BadBits: return "BadBits";
    case ErrorCode::BadCutoff: return "BadCutoff";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::EncoderUnavailable: return "EncoderUnavailable";
    case ErrorCode::EncoderFailed: return "EncoderFailed";
  }
  return "Unknown";
}

}  // namespace graphsteg
