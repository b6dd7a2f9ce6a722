#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lapkit {

/// Error classes raised by the toolkit. Each maps to a distinct CLI exit status.
enum class ErrorCode {
  MalformedXml = 1,
  MissingField,
  InvalidValue,
  DimensionMismatch,
  DegenerateGeometry,
  NonPositiveSpacing,
  DuplicateDirection,
  InternalNode,
  IndexOutOfRange,
  NotDegenerate,
  ZeroMatrix,
  NonSquare,
  ShapeMismatch,
  SizeMismatch,
  DegenerateUnsolvable,
  SingularFactorization,
  ZeroEigenvalue,
  TooLarge,
  NonPowerOfTwo,
  EmptyDecomposition,
  EntryOutOfRange,
  BadLength,
  Io,
  CorruptHeader,
  TruncatedPayload,
  KindMismatch,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lapkit
