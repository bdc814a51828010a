#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace semireal {

// Base for every domain error the library throws. The CLI maps these to
// exit code 1; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse: " + what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Series domination u_i <= v_i failed at a specific index.
class DominationViolated : public Error {
 public:
  explicit DominationViolated(std::uint64_t index)
      : Error("domination violated at index " + std::to_string(index)),
        index(index) {}
  std::uint64_t index;
};

// A supplied reduction witness broke its contract.
class InvariantBroken : public Error {
 public:
  explicit InvariantBroken(const std::string& what)
      : Error("witness invariant broken: " + what) {}
};

// Running interval length passed the cover's declared budget.
class LengthBudgetExceeded : public Error {
 public:
  explicit LengthBudgetExceeded(const std::string& what)
      : Error("length budget exceeded: " + what) {}
};

// A prediction strategy asked for a new prediction after spending epsilon.
class StrategyOverspent : public Error {
 public:
  StrategyOverspent() : Error("strategy overspent its epsilon budget") {}
};

// Selected series mass reached the epsilon it was required to stay under.
class WeightOverflow : public Error {
 public:
  explicit WeightOverflow(const std::string& what)
      : Error("weight overflow: " + what) {}
};

class PrefixFreeViolation : public Error {
 public:
  PrefixFreeViolation(const std::string& p, const std::string& q)
      : Error("program table not prefix-free: '" + p + "' prefixes '" + q +
              "'") {}
};

class KraftViolation : public Error {
 public:
  explicit KraftViolation(const std::string& what)
      : Error("Kraft sum exceeds 1: " + what) {}
};

// Interval failed the weight-density precondition of the union bound.
class DensityViolated : public Error {
 public:
  explicit DensityViolated(const std::string& what)
      : Error("density precondition violated: " + what) {}
};

// Two series truncations that were required to share a common sum do not.
class SumMismatch : public Error {
 public:
  explicit SumMismatch(const std::string& what)
      : Error("sum mismatch: " + what) {}
};

// An approximation reached or passed the limit it was declared to approach.
class LimitInconsistent : public Error {
 public:
  explicit LimitInconsistent(const std::string& what)
      : Error("limit inconsistent: " + what) {}
};

// Row support metadata of a double-indexed series is malformed.
class RowNotFinite : public Error {
 public:
  explicit RowNotFinite(const std::string& what)
      : Error("row support not finite: " + what) {}
};

}  // namespace semireal
