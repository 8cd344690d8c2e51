#include "matmeans/error.hpp"

namespace matmeans {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::RequiresOrdered: return "RequiresOrdered";
    case ErrorKind::WeightOrder: return "WeightOrder";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ConstructionFailure: return "ConstructionFailure";
  }
  return "Unknown";
}

}  // namespace matmeans
