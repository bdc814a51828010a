#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "semireal/covers.hpp"
#include "semireal/fuel.hpp"
#include "semireal/lsc_real.hpp"
#include "semireal/q.hpp"
#include "semireal/semimeasure.hpp"
#include "semireal/witness.hpp"

namespace semireal {

// Witness that alpha translates into alpha + rho with unit constant:
// phi(s) waits for the first stage n where alpha's and rho's lower
// approximations satisfy a_n + r_n > s and answers a_n. Sound because
// alpha - a_n <= (alpha + rho) - (a_n + r_n) < (alpha + rho) - s.
// rho must never approximate below zero. Queries at or above alpha + rho
// stay Pending at every fuel.
ReductionWitness witness_from_sum(const LscReal& alpha, const LscReal& rho);

// The gap beta - alpha recovered from a unit-constant witness: the running
// hull of b_n - phi(b_n) over beta's approximations. Requires constant 1.
LscReal diff_to_lsc(const ReductionWitness& w, const LscReal& beta);

// Witness for sum(u) into sum(v) when u's increments never exceed v's past
// index 0. The gap series v_i - u_i is checked lazily as stages are pulled;
// the first index past 0 with u_i > v_i throws DominationViolated.
ReductionWitness dominated_witness(const LscReal& u, const LscReal& v);

// Composition: a witness for alpha into c1*beta and one for beta into
// c2*gamma compose to alpha into (c1*c2)*gamma.
ReductionWitness compose_witness(const ReductionWitness& outer,
                                 const ReductionWitness& inner);

// Splits the increments of v so that the selected parts sum to the value
// the witness translates into. Writing A for the already selected total and
// A' for the fresh translation of v's new partial sum, each step takes
//   (1) nothing when A' < A,
//   (2) the difference A' - A when A <= A' <= A + v_i,
//   (3) the whole increment v_i when A' > A + v_i,
// checked in that order; the first increment has no floor, so a negative
// leading term can be absorbed. Per-step case numbers land in case_log when
// given, in index order, once each. Needs constant 1; the final increment
// of an exhausted v whose partial sum attains the limit stays Pending
// forever, because the witness has nothing strictly below the limit left
// to translate.
LscReal split_along(const LscReal& v, const ReductionWitness& w,
                    std::shared_ptr<std::vector<int>> case_log = nullptr);

// One round of the shifting construction: alpha's strictly increasing
// values supply lengths, placed as closed intervals at beta's current
// approximation; each time beta provably exits the placed interval to the
// right, the overshoot is logged as a hole and the next length is placed
// at the new position. The hole series starts at (first beta value -
// first alpha value), so its sum tracks beta - alpha while the reduction
// keeps succeeding.
struct RaceOutcome {
  enum class Status { CoverProduced, ReducingSoFar };
  Status status;
  // CoverProduced: beta's presentation is exhausted strictly inside a
  // placed interval, so that interval traps the limit forever. The placed
  // closed intervals are re-published as slightly larger open ones, the
  // k-th grown by 2^-(k+10).
  std::optional<Cover> cover;
  // ReducingSoFar: the evidence so far. d_0 may be negative.
  std::optional<LscReal> holes;
  std::vector<Interval> placed;  // closed, in placement order
  bool alpha_exhausted = false;  // lengths ran out; reduction trivially fine
};
RaceOutcome race(const LscReal& alpha, const LscReal& beta, Fuel fuel);

// Weighted combination of finitely many reals confined to [0, 1]: the
// total is sum(w_i * alpha_i), and each part translates into the total
// scaled by 1/w_i via a sum witness.
struct WeightedComplete {
  LscReal total;
  // Witness that part i translates into (1/w_i) * total.
  ReductionWitness witness_for(std::size_t i) const;

  std::vector<LscReal> parts;
  std::vector<Q> weights;
};
WeightedComplete weighted_complete(std::vector<LscReal> reals, std::vector<Q> weights);

// Redistributes mass so the total tracks alpha exactly: every index keeps
// mass(i)/c, and index 0 additionally absorbs tau = (c*alpha - total)/c,
// revealed through the witness gap. The declared total becomes alpha's
// known upper bound when present, else 1.
Semimeasure omega_with_sum(const Semimeasure& m, const LscReal& alpha,
                           const ReductionWitness& w);

}  // namespace semireal
