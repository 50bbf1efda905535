#include "splitlab/error.hpp"

namespace splitlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_scheme: return "InvalidScheme";
    case ErrorCode::degenerate_g: return "DegenerateG";
    case ErrorCode::negative_g: return "NegativeG";
    case ErrorCode::precondition_violated: return "PreconditionViolated";
    case ErrorCode::irrational_coefficient: return "IrrationalCoefficient";
    case ErrorCode::singular_alpha: return "SingularAlpha";
    case ErrorCode::unsupported_n: return "UnsupportedN";
    case ErrorCode::radicand_negative: return "RadicandNegative";
    case ErrorCode::not_symmetric: return "NotSymmetric";
    case ErrorCode::non_finite: return "NonFinite";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::usage_error: return "UsageError";
  }
  return "Error";
}

}  // namespace splitlab
