#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entcat {

enum class ErrorCode {
  NotNormalized,
  NegativeEntry,
  TargetTooSmall,
  DomainError,
  DegenerateTarget,
  NotACatalyst,
  GenerationExhausted,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::TargetTooSmall: return "TargetTooSmall";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateTarget: return "DegenerateTarget";
    case ErrorCode::NotACatalyst: return "NotACatalyst";
    case ErrorCode::GenerationExhausted: return "GenerationExhausted";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace entcat
