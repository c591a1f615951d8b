#pragma once

#include <stdexcept>
#include <string>

namespace oddity {

enum class ErrorKind {
  FileNotFound,
  UnsupportedFormat,
  CorruptImage,
  RegionOutOfBounds,
  GridNotDetected,
  EmptyCloud,
  TooFewPoints,
  NonFiniteInput,
  UnknownConcept,
  InvalidArgument,
  ManifestParse,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace oddity
