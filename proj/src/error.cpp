#include "oddity/error.hpp"

namespace oddity {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::CorruptImage: return "CorruptImage";
    case ErrorKind::RegionOutOfBounds: return "RegionOutOfBounds";
    case ErrorKind::GridNotDetected: return "GridNotDetected";
    case ErrorKind::EmptyCloud: return "EmptyCloud";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::UnknownConcept: return "UnknownConcept";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ManifestParse: return "ManifestParse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace oddity
