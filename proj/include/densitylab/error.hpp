#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace densitylab {

/// Machine-readable failure categories. Each maps to a stable string code
/// used in CLI reports.
enum class ErrorCode {
  ParseError,
  InvalidStructure,
  Precondition,
  NotEnoughElements,
  Unbounded,
  HorizonExceeded,
  Unsupported,
  ConditionUnsatisfiable,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace densitylab
