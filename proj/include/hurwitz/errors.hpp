#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hurwitz {

using cplx = std::complex<double>;

enum class ErrorCode {
  InvalidInput,
  NonTransitive,
  ProductNotIdentity,
  DuplicateCriticalValue,
  BasePointCollision,
  NonIntegerGenus,
  NegativeGenus,
  DomainError,
  TruncationFailure,
  DegenerateInput,
  NonConvergence,
  CriticalPointSingularity,
  IllConditionedPeriods,
  DiagonalTooClose,
  ExtrapolationUnstable,
  SheetTrackingLoss,
  CharacteristicSingular,
  WrongOrder,
  NormalizationFailure,
  DegenerateCriticalPoint,
  LatticeResolutionFailure,
  ContourTooLarge,
  ChartBranchInconsistency,
  DifferentiationUnstable,
  HankelZero,
  TailModelMismatch,
  FitUnstable,
  PhaseUnwrappingFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace hurwitz
