#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ttpybo {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: non-additive forms, bad cocycles,
// out-of-range slots, unsupported group shapes.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Division by zero, incompatible cyclotomic moduli, non-coprime Galois
// exponents.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// A sweep would visit more candidates than allowed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : Error("budget exceeded: sweep needs " + std::to_string(required) +
              " candidates, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

// An exact check that was expected to hold did not (e.g. eigenvalue
// candidates failing to exhaust a spectrum).
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ttpybo
