#pragma once

#include <stdexcept>
#include <string>

namespace gravdirac {

enum class ErrorKind {
  InvalidArgument,
  NegativeArgument,
  DerivativeAtKink,
  GridTooSparse,
  SlopeUnstable,
  QuadratureNonConvergent,
  DivergentTotalEnergy,
  ExponentFitUnstable,
  BorderlineLaw,
  PositiveBareMass,
  HorizonPresent,
  SeriesMatchFailure,
  IntegratorStep,
  NonSymmetricAssembly,
  ResolutionDisagreement,
  WindowAtEdge,
  LambdaInGap,
  StiffIntegrationFailure,
  OutOfRange,
  ExtrapolationUnstable,
  NegativeRadicand,
  BracketingFailure,
  ParseError,
  ValidationError,
  IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace gravdirac
