#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace semireal {

// Deterministic computation budget. One step pays for one term query of one
// underlying stream; derived queries charge one step for themselves plus
// whatever their delegated queries charge. Everything observable is a
// function of (input, fuel): rerunning with the same budget replays the same
// pulls, and more fuel only extends what was already emitted.
struct Fuel {
  std::uint64_t steps = 0;
};

class FuelMeter {
 public:
  explicit FuelMeter(Fuel f) : remaining_(f.steps) {}

  // Consume n steps; false (and drained) when the budget cannot cover them.
  bool take(std::uint64_t n = 1) {
    if (remaining_ < n) {
      consumed_ += remaining_;
      remaining_ = 0;
      return false;
    }
    remaining_ -= n;
    consumed_ += n;
    return true;
  }

  std::uint64_t remaining() const { return remaining_; }
  std::uint64_t consumed() const { return consumed_; }

 private:
  std::uint64_t remaining_;
  std::uint64_t consumed_ = 0;
};

// Result of a semi-decidable query: Confirmed carries a payload that later
// fuel can never retract; Pending means the budget ran out first.
template <typename T>
struct Verdict {
  std::optional<T> value;

  bool confirmed() const { return value.has_value(); }
  static Verdict pending() { return Verdict{std::nullopt}; }
  static Verdict of(T v) { return Verdict{std::move(v)}; }
};

// Internal pull result for budgeted streams. `ended` is stronger than
// starvation: the stream provably has no item at this index at any fuel
// (finite literal data ran out). Operations use it to distinguish "wait
// longer" from "waiting is futile".
enum class PullState { ok, fuel_out, ended };

template <typename T>
struct Pull {
  PullState state;
  std::optional<T> value;

  bool ok() const { return state == PullState::ok; }
  bool ended() const { return state == PullState::ended; }
  bool starved() const { return state == PullState::fuel_out; }
  const T& operator*() const { return *value; }

  static Pull some(T v) { return Pull{PullState::ok, std::move(v)}; }
  static Pull starve() { return Pull{PullState::fuel_out, std::nullopt}; }
  static Pull end() { return Pull{PullState::ended, std::nullopt}; }

  template <typename U>
  static Pull carry(const Pull<U>& other) {
    return Pull{other.state, std::nullopt};
  }
};

}  // namespace semireal
