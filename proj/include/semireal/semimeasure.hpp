#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "semireal/q.hpp"
#include "semireal/stream.hpp"

namespace semireal {

// Discrete semimeasure given by lower approximation: weight(i) is a weakly
// increasing stream of lower bounds on the i-th mass, and the masses sum to
// at most declared_total (itself at most 1). The streams may end, which
// certifies the final exact mass at that index.
struct Semimeasure {
  std::function<MemoStream<Q>(std::uint64_t)> weight;
  Q declared_total;
};

// Non-negative weight family without a total bound; painters and allocation
// rows use this shape. Same stream semantics as Semimeasure::weight.
using WeightFamily = std::function<MemoStream<Q>(std::uint64_t)>;

// Current best bound at index i after pulling at most `stages` reveals.
// Returns the last confirmed value (0 if nothing confirmed).
Q semimeasure_value(const Semimeasure& m, std::uint64_t i, std::uint64_t stages,
                    FuelMeter& meter);

// Sum of current bounds over indices 0..max_index, each advanced `stages`
// reveals. Throws DomainError if the sum passes declared_total.
Q semimeasure_prefix_total(const Semimeasure& m, std::uint64_t max_index,
                           std::uint64_t stages, FuelMeter& meter);

// Doubly indexed non-negative series with finitely supported rows.
struct DoubleSeries {
  std::function<Q(std::uint64_t i, std::uint64_t j)> term;
  // Strictly sorted column indices carrying the row's nonzero terms.
  std::function<std::vector<std::uint64_t>(std::uint64_t i)> row_support;
};

// Exact row sum over the declared support. Throws RowNotFinite on unsorted
// or duplicated support metadata, DomainError on a negative term.
Q row_sum(const DoubleSeries& d, std::uint64_t i);

}  // namespace semireal
