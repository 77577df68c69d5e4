#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistgame {

enum class ErrorCode {
  InvalidSpec,
  NotASubgroup,
  NotNormal,
  EvenOrderGroup,
  BudgetExceeded,
  OrderTooLarge,
  OrderNotPowerOfTwo,
  PreconditionViolated,
  WrongPhase,
  IllegalElement,
  UnknownSession,
  Capacity,
  Conflict,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "invalid-spec";
    case ErrorCode::NotASubgroup: return "not-a-subgroup";
    case ErrorCode::NotNormal: return "not-normal";
    case ErrorCode::EvenOrderGroup: return "even-order-group";
    case ErrorCode::BudgetExceeded: return "budget-exceeded";
    case ErrorCode::OrderTooLarge: return "order-too-large";
    case ErrorCode::OrderNotPowerOfTwo: return "order-not-power-of-two";
    case ErrorCode::PreconditionViolated: return "precondition-violated";
    case ErrorCode::WrongPhase: return "wrong-phase";
    case ErrorCode::IllegalElement: return "illegal-element";
    case ErrorCode::UnknownSession: return "unknown-session";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::Conflict: return "conflict";
    case ErrorCode::Internal: return "internal-error";
  }
  return "unknown";
}

// Every failure the library reports carries one of the codes above so the
// CLI and the HTTP layer can map it without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace twistgame
