#include "opz/error.hpp"

namespace opz {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::PeriodTooLarge: return "PeriodTooLarge";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::PointNotInBand: return "PointNotInBand";
    case ErrorKind::DensitySingularity: return "DensitySingularity";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::DirichletOutsideGap: return "DirichletOutsideGap";
    case ErrorKind::NearBranchPoint: return "NearBranchPoint";
    case ErrorKind::SingularPointOnBand: return "SingularPointOnBand";
    case ErrorKind::CountExceedsBound: return "CountExceedsBound";
    case ErrorKind::MissedZero: return "MissedZero";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace opz
