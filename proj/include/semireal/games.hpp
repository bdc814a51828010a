#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semireal/covers.hpp"
#include "semireal/fuel.hpp"
#include "semireal/lsc_real.hpp"
#include "semireal/q.hpp"
#include "semireal/semimeasure.hpp"
#include "semireal/stream.hpp"

namespace semireal {

// One wager: after seeing value base_value at step base_index, the bettor
// claims the stream will never exceed base_value + delta. A later value
// strictly above that mark makes it violated; an unviolated wager still
// open when the run stops is standing.
struct Prediction {
  std::uint64_t base_index = 0;
  Q base_value;
  Q delta;
  enum class Status { active, violated, standing } status = Status::active;
};

struct GameTrace {
  std::vector<Prediction> predictions;
  Q epsilon;
  Q delta_total;        // sum of all emitted deltas
  bool win_so_far = false;  // last wager standing and delta_total < epsilon
};

// Consulted whenever no wager is active: may decline (confirmed nullopt),
// wager a non-negative delta from the current value, or report that its own
// bookkeeping ran out of fuel (Pending). Deterministic given the history.
struct Strategy {
  std::function<Verdict<std::optional<Q>>(const GameTrace&, std::uint64_t i,
                                          const Q& value, FuelMeter&)>
      next_prediction;
};

// Runs the wager game along a's lower approximations until the budget runs
// out or the presentation is provably exhausted. At most one wager is
// active at a time; a new one may be placed only once the previous is
// violated. The bettor may cross its epsilon allowance once (the wager
// that crosses is accepted); any emission attempted with delta_total
// already at or past epsilon throws StrategyOverspent. A still-active
// wager becomes standing when the run stops, and win_so_far records
// "standing and strictly within the allowance"; no unconditional win is
// ever claimed.
GameTrace play(const Strategy& s, const LscReal& a, const Q& epsilon, Fuel fuel);

// Bets the contiguous covered stretch: discovers one interval of c per
// consultation, declines while the current value is outside the discovered
// union, and otherwise wagers exactly the coverage reach right of the
// value. Wager intervals of one run are disjoint and all covered, so the
// total delta never exceeds the cover's emitted length.
Strategy strategy_from_cover(const Cover& c);

// The wagers of one run, materialized as closed intervals
// [base, base + delta] with declared budget epsilon: observing the cover
// enforces the same allowance the game enforces.
Cover cover_from_strategy(const Strategy& s, const LscReal& a, const Q& epsilon,
                          Fuel fuel);

// Strategy for a stream that is the termwise sum of a and b, each coming
// with a purported cover of its limit. It waits until both component
// values are covered, reads off the contiguous reaches h and k, and wagers
// 2*min(h,k). Every violated wager provably burns at least delta/2 of one
// component's remaining coverage, so the total delta of a run is at most
// twice the two covers' combined length.
Strategy sum_strategy(const Cover& cov_a, const Cover& cov_b, const LscReal& a,
                      const LscReal& b);

// Incremental painting: painter i receives anchor point anchors(i) and a
// weakly increasing paint allowance h(i); whenever the allowance grows, the
// painter covers that much new ground in the leftmost unpainted gaps at or
// right of its anchor. Zones are half-open, no point is ever painted
// twice, and the emitted total equals the consumed paint. Work is
// scheduled by anti-diagonals over (painter, allowance stage), so every
// painter makes progress under any fuel. With doubling, every allowance
// is silently doubled on receipt. Shrinking allowances and negative paint
// throw DomainError. The stream ends only when the anchor supply and
// every allowance stream are provably exhausted.
Cover painter_anchored(MemoStream<Q> anchors, const WeightFamily& h,
                       bool doubling = false);

// Anchors taken from the strictly increasing sequence view of a.
Cover painter(const LscReal& a, const WeightFamily& h, bool doubling = false);

// Index set given as a comma list of naturals and/or a cofinite tail
// marker "N-" (every index at or above N). "" is empty.
struct IndexSet {
  std::vector<std::uint64_t> listed;
  std::optional<std::uint64_t> cofinite_from;

  bool contains(std::uint64_t i) const;
  static IndexSet parse(const std::string& text);
};

// Paints the selected term intervals of a series: painter i is anchored at
// the partial sum before term i and funded d_i when i is selected (zero
// otherwise), with doubling on. The running selected total must stay
// strictly below epsilon, checked as terms are consumed; reaching it
// throws WeightOverflow. The cover's declared budget is 2*epsilon.
Cover wset_check(const LscReal& d, const IndexSet& W, const Q& epsilon);

// The reverse reading: indices i whose closed term interval
// [S_i, S_i + d_i] lies inside a single interval emitted by the cover
// within the given fuel. S_i is the partial sum before term i.
std::vector<std::uint64_t> wset_from_cover(const LscReal& d, const Cover& c,
                                           Fuel fuel);

}  // namespace semireal
