#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splitlab {

enum class ErrorCode {
  invalid_scheme,
  degenerate_g,
  negative_g,
  precondition_violated,
  irrational_coefficient,
  singular_alpha,
  unsupported_n,
  radicand_negative,
  not_symmetric,
  non_finite,
  parse_error,
  usage_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace splitlab
