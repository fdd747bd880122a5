#include "offshell/error.hpp"

namespace offshell {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::OnSingularSupport: return "ON_SINGULAR_SUPPORT";
    case ErrorCode::UndefinedAtTauZero: return "UNDEFINED_AT_TAU_ZERO";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::NonIntegrable: return "NONINTEGRABLE";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::GridTooCoarse: return "GRID_TOO_COARSE";
  }
  return "UNKNOWN";
}

}  // namespace offshell
