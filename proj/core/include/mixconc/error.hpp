#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixconc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad shapes, non-stochastic rows, unknown symbols, indices
/// out of range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A dense representation or an enumeration would exceed its configured budget.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : Error(what), required_(required), budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Conditioning on an event of zero probability.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, std::vector<std::size_t> prefix)
      : Error(what), prefix_(std::move(prefix)) {}

  const std::vector<std::size_t>& prefix() const noexcept { return prefix_; }

 private:
  std::vector<std::size_t> prefix_;
};

/// A bound was requested outside the range of t where it is stated.
class OutOfValidityError : public Error {
 public:
  OutOfValidityError(const std::string& what, double threshold)
      : Error(what), threshold_(threshold) {}

  double threshold() const noexcept { return threshold_; }

 private:
  double threshold_;
};

/// Estimate and certificate disagree on sequence length or metric.
class ConventionError : public Error {
 public:
  using Error::Error;
};

}  // namespace mixconc
