#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gronwall {

// Precondition violations on plain arguments (N = 0, nonfinite c, malformed lists)
// are reported as std::invalid_argument; violations of a mathematical domain
// (|w| <= 1, r < 1, |lambda| > 5, ...) as std::domain_error. The types below
// cover the remaining failure modes.

/// A truncation order larger than the coefficient table holds was requested.
class InsufficientCoefficients : public std::out_of_range {
public:
  InsufficientCoefficients(std::size_t requested, std::size_t available)
      : std::out_of_range("requested " + std::to_string(requested) +
                          " coefficients but the table holds " +
                          std::to_string(available)),
        requested_(requested),
        available_(available) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t available() const noexcept { return available_; }

private:
  std::size_t requested_;
  std::size_t available_;
};

/// The job needs more Laurent coefficients than the configured budget allows.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(std::size_t required, std::size_t budget)
      : std::runtime_error("computation requires " + std::to_string(required) +
                           " coefficients, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t budget() const noexcept { return budget_; }

private:
  std::size_t required_;
  std::size_t budget_;
};

/// An orbit left every bounded region (|z| > 1e150) where a bounded orbit was expected.
class OrbitEscaped : public std::runtime_error {
public:
  explicit OrbitEscaped(std::size_t step)
      : std::runtime_error("orbit escaped to infinity at step " + std::to_string(step)),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

}  // namespace gronwall
