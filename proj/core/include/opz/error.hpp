#ifndef OPZ_ERROR_HPP
#define OPZ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace opz {

/// Fatal conditions raised by the numerical kernels and the model loader.
/// Non-fatal findings (branch ambiguity, bound violations, residual warnings)
/// are carried as flags in the result structs instead.
enum class ErrorKind {
  InvalidModel,
  PeriodTooLarge,
  RootFindingFailure,
  PointNotInBand,
  DensitySingularity,
  QuadratureNotConverged,
  DirichletOutsideGap,
  NearBranchPoint,
  SingularPointOnBand,
  CountExceedsBound,
  MissedZero,
  InvalidArgument,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace opz

#endif  // OPZ_ERROR_HPP
