#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "semireal/covers.hpp"
#include "semireal/lsc_real.hpp"
#include "semireal/q.hpp"
#include "semireal/semimeasure.hpp"
#include "semireal/stream.hpp"

namespace semireal {

// Per-cell paint levels produced by the greedy row allocation. mtilde(i,j)
// is a weakly increasing stream whose stages track the stages of the row
// budget stream: at every stage the cell holds at most c times its term,
// and a row's cells together hold at most the budget revealed so far.
struct Allocation {
  std::function<MemoStream<Q>(std::uint64_t i, std::uint64_t j)> mtilde;
  Q c;
};

// Collapses a doubly indexed series to the series of its exact row sums.
// The result never ends (rows outside the data sum to zero).
LscReal regroup(const DoubleSeries& d);

// Greedy allocation in column order: each cell takes min(c * term, budget
// still unclaimed in its row), so earlier support columns saturate first
// and rising budgets only raise levels. Rows whose final budget reaches
// c * (row sum) get every cell at full scale.
Allocation allocate_mtilde(const DoubleSeries& d, const Semimeasure& m, const Q& c);

// Dyadic mix of allocations at c = 4, 16, ..., 4^levels: the pair (i,j)
// receives sum_n 2^-n * mtilde_n(i,j), indexed by pair_index. Declared
// total is (1 - 2^-levels) times m's declared total.
Semimeasure combine_allocations(const DoubleSeries& d, const Semimeasure& m,
                                unsigned levels);

// Common refinement of two finite non-negative series with the same sum:
// lays both partial-sum breakpoint families on [0, common_sum] and returns
// the segment lengths between consecutive distinct breakpoints. Grouping
// the result at either family's breakpoints recovers that series (zero
// terms vanish). Inputs must be series presentations that provably end.
LscReal mesh_refine(const LscReal& a, const LscReal& b, const Q& common_sum);

// Rewrites a finite non-negative series into one with weakly decreasing
// terms and the same sum: zero terms are dropped, and a term larger than
// its predecessor is split into equal pieces no bigger than it.
LscReal split_to_nonincreasing(const LscReal& a);

// Mass boosted onto the term windows a cover traps. Index i carries
// 2^n * r_i once the window [S_i, S_i + r_i] (partial sums around term i)
// sits inside a single emitted interval, 0 before that; the cover must
// declare a budget of at most 2^-2n, so the total stays under the declared
// 2^-n. Each weight stream reveals one more cover item per stage.
Semimeasure cover_to_semimeasure(const LscReal& r, const Cover& cov, unsigned n);

// Lines `i j num/den`, '#' comments; omitted cells are zero. Duplicate
// cells are rejected; negative values are domain errors.
DoubleSeries load_double_series(const std::string& text);
DoubleSeries load_double_series_file(const std::string& path);

}  // namespace semireal
