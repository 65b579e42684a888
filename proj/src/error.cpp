#include "kp/error.hpp"

namespace kp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidPlace: return "InvalidPlace";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::FiniteField: return "FiniteField";
    case ErrorCode::NotALine: return "NotALine";
    case ErrorCode::NotOnQuadric: return "NotOnQuadric";
    case ErrorCode::CentreOnQuadric: return "CentreOnQuadric";
    case ErrorCode::PointOnQuadric: return "PointOnQuadric";
    case ErrorCode::NotExternal: return "NotExternal";
    case ErrorCode::UndecidedWithoutCertificate: return "UndecidedWithoutCertificate";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::NotZeroSecant: return "NotZeroSecant";
    case ErrorCode::SpanDeficient: return "SpanDeficient";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::PartitionViolation: return "PartitionViolation";
    case ErrorCode::CentralElement: return "CentralElement";
    case ErrorCode::UnsupportedBaseField: return "UnsupportedBaseField";
    case ErrorCode::NotDivision: return "NotDivision";
    case ErrorCode::PlaneNotThroughD: return "PlaneNotThroughD";
    case ErrorCode::PlaneNotExternal: return "PlaneNotExternal";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::PointNotOnD: return "PointNotOnD";
    case ErrorCode::ClassificationInconsistency: return "ClassificationInconsistency";
    case ErrorCode::NotInComplex: return "NotInComplex";
    case ErrorCode::CliffordCase: return "CliffordCase";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace kp
