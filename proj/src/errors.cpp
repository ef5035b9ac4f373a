#include "hurwitz/errors.hpp"

namespace hurwitz {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonTransitive: return "NonTransitive";
    case ErrorCode::ProductNotIdentity: return "ProductNotIdentity";
    case ErrorCode::DuplicateCriticalValue: return "DuplicateCriticalValue";
    case ErrorCode::BasePointCollision: return "BasePointCollision";
    case ErrorCode::NonIntegerGenus: return "NonIntegerGenus";
    case ErrorCode::NegativeGenus: return "NegativeGenus";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TruncationFailure: return "TruncationFailure";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::CriticalPointSingularity: return "CriticalPointSingularity";
    case ErrorCode::IllConditionedPeriods: return "IllConditionedPeriods";
    case ErrorCode::DiagonalTooClose: return "DiagonalTooClose";
    case ErrorCode::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorCode::SheetTrackingLoss: return "SheetTrackingLoss";
    case ErrorCode::CharacteristicSingular: return "CharacteristicSingular";
    case ErrorCode::WrongOrder: return "WrongOrder";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::DegenerateCriticalPoint: return "DegenerateCriticalPoint";
    case ErrorCode::LatticeResolutionFailure: return "LatticeResolutionFailure";
    case ErrorCode::ContourTooLarge: return "ContourTooLarge";
    case ErrorCode::ChartBranchInconsistency: return "ChartBranchInconsistency";
    case ErrorCode::DifferentiationUnstable: return "DifferentiationUnstable";
    case ErrorCode::HankelZero: return "HankelZero";
    case ErrorCode::TailModelMismatch: return "TailModelMismatch";
    case ErrorCode::FitUnstable: return "FitUnstable";
    case ErrorCode::PhaseUnwrappingFailure: return "PhaseUnwrappingFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace hurwitz
