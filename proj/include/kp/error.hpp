#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kp {

// One code per failure mode named in the module contracts. The CLI maps
// these onto exit codes and report strings.
enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  ParseError,
  InvalidPlace,
  UnsupportedField,
  FactorizationFailed,
  DimensionMismatch,
  AmbientMismatch,
  ZeroParameter,
  InfiniteField,
  FiniteField,
  NotALine,
  NotOnQuadric,
  CentreOnQuadric,
  PointOnQuadric,
  NotExternal,
  UndecidedWithoutCertificate,
  SearchExhausted,
  NotTangent,
  NotZeroSecant,
  SpanDeficient,
  VerificationFailed,
  PartitionViolation,
  CentralElement,
  UnsupportedBaseField,
  NotDivision,
  PlaneNotThroughD,
  PlaneNotExternal,
  Undecided,
  PointNotOnD,
  ClassificationInconsistency,
  NotInComplex,
  CliffordCase,
  InvalidDescriptor,
  Internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kp
