#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kantorovich {

// Malformed or out-of-contract input (bad parameters, unparsable specs).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical hypothesis or certification requirement does not hold.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class MissingSampleError : public HypothesisError {
 public:
  explicit MissingSampleError(std::int64_t k)
      : HypothesisError("missing averaged sample for k=" + std::to_string(k)), k_(k) {}

  std::int64_t k() const noexcept { return k_; }

 private:
  std::int64_t k_;
};

}  // namespace kantorovich
