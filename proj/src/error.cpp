#include "lapkit/error.hpp"

namespace lapkit {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::NonPositiveSpacing: return "NonPositiveSpacing";
    case ErrorCode::DuplicateDirection: return "DuplicateDirection";
    case ErrorCode::InternalNode: return "InternalNode";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotDegenerate: return "NotDegenerate";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::DegenerateUnsolvable: return "DegenerateUnsolvable";
    case ErrorCode::SingularFactorization: return "SingularFactorization";
    case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonPowerOfTwo: return "NonPowerOfTwo";
    case ErrorCode::EmptyDecomposition: return "EmptyDecomposition";
    case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::Io: return "Io";
    case ErrorCode::CorruptHeader: return "CorruptHeader";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::KindMismatch: return "KindMismatch";
  }
  return "Unknown";
}

}  // namespace lapkit
