#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lqg {

/// Invalid model parameter (gamma, a_const, step sizes, counts).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a density or special function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input data (paths, graphs, files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial_value, double partial_error,
                  std::size_t evaluations)
      : std::runtime_error(what),
        partial_value_(partial_value),
        partial_error_(partial_error),
        evaluations_(evaluations) {}

  double partial_value() const noexcept { return partial_value_; }
  double partial_error() const noexcept { return partial_error_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double partial_value_;
  double partial_error_;
  std::size_t evaluations_;
};

/// A sampler ran out of its attempt or step budget.
class SamplingError : public std::runtime_error {
 public:
  SamplingError(const std::string& what, std::uint64_t attempts, std::uint64_t successes)
      : std::runtime_error(what), attempts_(attempts), successes_(successes) {}

  std::uint64_t attempts() const noexcept { return attempts_; }
  std::uint64_t successes() const noexcept { return successes_; }
  double acceptance_rate() const noexcept {
    return attempts_ == 0 ? 0.0 : static_cast<double>(successes_) / static_cast<double>(attempts_);
  }

 private:
  std::uint64_t attempts_;
  std::uint64_t successes_;
};

}  // namespace lqg
