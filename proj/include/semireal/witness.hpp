#pragma once

#include <functional>

#include "semireal/fuel.hpp"
#include "semireal/lsc_real.hpp"
#include "semireal/q.hpp"

namespace semireal {

// Constructive witness that one lower semicomputable real translates into
// another: phi maps any rational below c*beta to a rational below alpha
// with alpha - phi(r) <= c*beta - r. The constant scales the target; a
// witness against c*beta never bakes the scaling into streams, it lives
// here. rho presents the gap c*beta - alpha, which the constructions
// producing witnesses always know.
//
// phi is budgeted: Pending means the wait for a good enough stage has not
// finished within the meter, and a caller querying r >= c*beta waits
// forever by contract.
struct ReductionWitness {
  std::function<Verdict<Q>(const Q&, FuelMeter&)> phi;
  LscReal rho;
  Q constant;
};

}  // namespace semireal
