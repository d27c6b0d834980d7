#include "lsc/error.hpp"

namespace lsc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAZero: return "NotAZero";
    case ErrorCode::NonPositiveHessian: return "NonPositiveHessian";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DegenerateDecomposition: return "DegenerateDecomposition";
    case ErrorCode::OverlappingSupports: return "OverlappingSupports";
    case ErrorCode::PartitionNotUnity: return "PartitionNotUnity";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NonPositiveFunction: return "NonPositiveFunction";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::IllConditionedSpan: return "IllConditionedSpan";
  }
  return "Unknown";
}

}  // namespace lsc
