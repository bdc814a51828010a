#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "semireal/fuel.hpp"
#include "semireal/interval.hpp"
#include "semireal/lsc_real.hpp"
#include "semireal/machine.hpp"
#include "semireal/q.hpp"
#include "semireal/stream.hpp"
#include "semireal/witness.hpp"

namespace semireal {

// Lazily enumerated union of rational intervals, optionally carrying a
// declared bound on the total emitted length. Every observation goes
// through cover_prefix, which enforces the bound as items appear.
struct Cover {
  MemoStream<Interval> items;
  std::optional<Q> length_budget;
};

Cover cover_literal(std::vector<Interval> items, std::optional<Q> budget = std::nullopt);
Cover cover_from_stream(MemoStream<Interval> items, std::optional<Q> budget = std::nullopt);

// Confirmed prefix of the enumeration within the meter, stopping early at
// max_items when given. Throws LengthBudgetExceeded the moment the running
// length sum passes the declared budget.
struct CoverPrefix {
  std::vector<Interval> items;
  bool ended = false;
};
CoverPrefix cover_prefix(const Cover& c, FuelMeter& m,
                         std::optional<std::size_t> max_items = std::nullopt);

// Sum of emitted lengths (not union measure) within fuel.
Q total_length(const Cover& c, Fuel fuel);

// Semi-decision of "some emitted interval contains the limit". Confirmed
// needs a proof: either the presentation is exhausted (exact limit known)
// and an interval contains it, or an approximation enters an interval from
// the left while known_sup bounds the limit under the right end. The value
// is the index of the witnessing interval.
Verdict<std::size_t> contains(const Cover& c, const LscReal& a, Fuel fuel);

// Rebases a cover of beta onto alpha through a unit-constant witness.
// Driven by beta's approximations b: input intervals provably left of the
// current b are dropped (beta has passed them), intervals containing b are
// re-emitted with the same length and openness starting at phi(b), and
// intervals right of b wait in a queue re-examined every time b advances.
// The alpha stream itself is not consulted; phi supplies the re-base
// points. Emitted lengths are a subset of input lengths, so the input's
// budget carries over.
Cover transform_cover(const Cover& cover_beta, const ReductionWitness& w,
                      const LscReal& a, const LscReal& b);

// Density-based union bound: every interval must hold strictly more than
// (c/2) * its length of point weight, and the weights sum to at most 1.
// Redundant intervals (inside the union of the others) are removed, the
// rest sorted; the certified result bounds the union measure by 4/c.
struct UnionBoundResult {
  Q bound;       // 4/c
  Q measure;     // exact union measure of the kept intervals
  std::vector<Interval> kept;
  std::vector<std::size_t> even, odd;  // alternating indices into kept
};
UnionBoundResult union_bound(const std::vector<Interval>& intervals,
                             const std::vector<std::pair<Q, Q>>& weights,
                             const Q& c);

// Neighborhood test: for every output whose shortest known program length
// improves during the machine enumeration (time order, then program), emit
// the open interval around its encoded rational with radius
// 2^-(length + c). Each program fires at most once, so the total length
// stays under the declared budget 2^-(c-1).
Cover u_c_cover(const Machine& M, unsigned c, Fuel fuel);

// Lines `left right openness`, '#' comments; rationals as num/den.
Cover load_cover(const std::string& text);
Cover load_cover_file(const std::string& path);
std::string save_cover(const Cover& c, std::size_t max_items, Fuel fuel);

}  // namespace semireal
