#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "semireal/fuel.hpp"

namespace semireal {

// Budgeted memoized stream: a lazy total-in-the-limit map index -> T.
//
// Every pull is one term query and charges one fuel step; a cold evaluation
// additionally charges whatever its own delegated pulls cost. Confirmed and
// ended results are cached, so a re-query costs exactly one step: budgets
// meter queries, values once confirmed are never retracted, and an operation
// that constructs its streams and pulls them in a fixed order is a
// deterministic function of (input, fuel). fuel_out is never cached.
//
// Streams may be handed between threads but must not be advanced
// concurrently; there is deliberately no lock here.
template <typename T>
class MemoStream {
 public:
  using Self = MemoStream<T>;
  // Evaluate index i. `self` is passed so evaluators can recurse into their
  // own earlier indices without creating ownership cycles.
  using EvalFn = std::function<Pull<T>(std::uint64_t i, FuelMeter&, const Self&)>;

  MemoStream() = default;
  explicit MemoStream(EvalFn fn) : st_(std::make_shared<State>(std::move(fn))) {}

  bool valid() const { return static_cast<bool>(st_); }

  Pull<T> at(std::uint64_t i, FuelMeter& m) const {
    State& s = *st_;
    if (!m.take()) return Pull<T>::starve();
    if (i < s.cache.size() && s.cache[i].known) {
      const Entry& e = s.cache[i];
      return e.value ? Pull<T>::some(*e.value) : Pull<T>::end();
    }
    Pull<T> r = s.fn(i, m, *this);
    if (r.starved()) return r;
    if (i >= s.cache.size()) s.cache.resize(i + 1);
    s.cache[i] = Entry{true, r.value};
    return r;
  }

 private:
  struct Entry {
    bool known = false;
    std::optional<T> value;  // nullopt = ended
  };
  struct State {
    explicit State(EvalFn f) : fn(std::move(f)) {}
    EvalFn fn;
    std::vector<Entry> cache;
  };
  std::shared_ptr<State> st_;
};

template <typename T>
MemoStream<T> stream_from_vector(std::vector<T> items) {
  return MemoStream<T>([items = std::move(items)](std::uint64_t i, FuelMeter&,
                                                  const MemoStream<T>&) {
    if (i >= items.size()) return Pull<T>::end();
    return Pull<T>::some(items[i]);
  });
}

// Infinite rule-backed stream; never ends.
template <typename T>
MemoStream<T> stream_from_rule(std::function<T(std::uint64_t)> rule) {
  return MemoStream<T>([rule = std::move(rule)](std::uint64_t i, FuelMeter&,
                                                const MemoStream<T>&) {
    return Pull<T>::some(rule(i));
  });
}

}  // namespace semireal
