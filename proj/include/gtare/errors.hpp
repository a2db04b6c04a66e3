#ifndef GTARE_ERRORS_HPP
#define GTARE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gtare {

enum class ErrorCode {
  NonTriangularLength,
  SingularMatrix,
  SingularRP,
  SingularR22,
  SingularLyapunov,
  UnsupportedRankDeficientR,
  UnsupportedShape,
  OrientationLost,
  MaxItersExceeded,
  MaxOuterExceeded,
  StabilizerNotFound,
  NotInDomain,
  DomainExit,
  NegativeConstantTerm,
  DimensionMismatch,
  NonFinite,
  ParseError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonTriangularLength: return "NonTriangularLength";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularRP: return "SingularRP";
    case ErrorCode::SingularR22: return "SingularR22";
    case ErrorCode::SingularLyapunov: return "SingularLyapunov";
    case ErrorCode::UnsupportedRankDeficientR: return "UnsupportedRankDeficientR";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::OrientationLost: return "OrientationLost";
    case ErrorCode::MaxItersExceeded: return "MaxItersExceeded";
    case ErrorCode::MaxOuterExceeded: return "MaxOuterExceeded";
    case ErrorCode::StabilizerNotFound: return "StabilizerNotFound";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::DomainExit: return "DomainExit";
    case ErrorCode::NegativeConstantTerm: return "NegativeConstantTerm";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gtare

#endif  // GTARE_ERRORS_HPP
