#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dispgen {

// Raised when an operation would exceed one of the explicit cost budgets.
// Budgets never degrade silently: the caller either raises the limit or
// switches to a cheaper mode (e.g. sampled verification).
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::string budget, std::string required, std::uint64_t limit)
      : std::runtime_error("budget '" + budget + "' exceeded: required " +
                           required + ", limit " + std::to_string(limit)),
        budget_(std::move(budget)),
        required_(std::move(required)),
        limit_(limit) {}

  BudgetError(std::string budget, std::uint64_t required, std::uint64_t limit)
      : BudgetError(std::move(budget), std::to_string(required), limit) {}

  const std::string& budget() const noexcept { return budget_; }
  const std::string& required() const noexcept { return required_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::string budget_;
  std::string required_;
  std::uint64_t limit_;
};

}  // namespace dispgen
