#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flg {

enum class ErrorKind {
  InvalidLetter,
  ArityMismatch,
  EmptyWord,
  RankTooLarge,
  ContextMismatch,
  UnsupportedGroup,
  InvalidParams,
  SyntaxError,
  NotPrenex,
  BudgetExceeded,
  ArgsConjugate,
  NotFoundWithinBudget,
  TrivialElement,
};

std::string_view to_string(ErrorKind kind);

// Domain error raised by every module. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), kind_(kind), position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace flg
