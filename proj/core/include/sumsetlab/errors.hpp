#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sumsetlab {

// An argument lies outside the documented domain of an operation
// (e.g. count(A, x) with x > bound).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Caller broke a structural contract: mismatched bounds or groups, h = 0,
// r > n and the like.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical precondition of an operation does not hold
// (e.g. e not in A for the e-transform, k + l > m).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested enumeration or lattice exceeds its configured budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t requested, std::uint64_t limit)
      : std::runtime_error(what), requested_(requested), limit_(limit) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

}  // namespace sumsetlab
