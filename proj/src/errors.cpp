#include "gravdirac/errors.hpp"

namespace gravdirac {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NegativeArgument: return "NegativeArgument";
    case ErrorKind::DerivativeAtKink: return "DerivativeAtKink";
    case ErrorKind::GridTooSparse: return "GridTooSparse";
    case ErrorKind::SlopeUnstable: return "SlopeUnstable";
    case ErrorKind::QuadratureNonConvergent: return "QuadratureNonConvergent";
    case ErrorKind::DivergentTotalEnergy: return "DivergentTotalEnergy";
    case ErrorKind::ExponentFitUnstable: return "ExponentFitUnstable";
    case ErrorKind::BorderlineLaw: return "BorderlineLaw";
    case ErrorKind::PositiveBareMass: return "PositiveBareMass";
    case ErrorKind::HorizonPresent: return "HorizonPresent";
    case ErrorKind::SeriesMatchFailure: return "SeriesMatchFailure";
    case ErrorKind::IntegratorStep: return "IntegratorStep";
    case ErrorKind::NonSymmetricAssembly: return "NonSymmetricAssembly";
    case ErrorKind::ResolutionDisagreement: return "ResolutionDisagreement";
    case ErrorKind::WindowAtEdge: return "WindowAtEdge";
    case ErrorKind::LambdaInGap: return "LambdaInGap";
    case ErrorKind::StiffIntegrationFailure: return "StiffIntegrationFailure";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::BracketingFailure: return "BracketingFailure";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace gravdirac
