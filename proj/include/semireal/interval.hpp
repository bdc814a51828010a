#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "semireal/q.hpp"

namespace semireal {

// Rational interval with independently closed or open endpoints. The wire
// format only carries the two symmetric forms (open, closed); the half-open
// forms arise internally, for painted zones and sweep arithmetic.
struct Interval {
  Q left;
  Q right;
  bool left_closed = false;
  bool right_closed = false;

  Q length() const { return right - left; }

  // True when no point satisfies the endpoint constraints.
  bool empty() const {
    if (left < right) return false;
    if (left > right) return true;
    return !(left_closed && right_closed);
  }

  bool contains(const Q& x) const {
    if (x < left || x > right) return false;
    if (x == left && !left_closed) return false;
    if (x == right && !right_closed) return false;
    return true;
  }

  bool operator==(const Interval& o) const {
    return left == o.left && right == o.right &&
           left_closed == o.left_closed && right_closed == o.right_closed;
  }
};

inline Interval open_iv(Q l, Q r) { return {std::move(l), std::move(r), false, false}; }
inline Interval closed_iv(Q l, Q r) { return {std::move(l), std::move(r), true, true}; }
// Painted zones are [l, r).
inline Interval halfopen_iv(Q l, Q r) { return {std::move(l), std::move(r), true, false}; }

// "open" / "closed" / "left_closed" / "right_closed"
std::string openness_str(const Interval& iv);
void set_openness(Interval& iv, const std::string& token);

// True when the union of the two intervals is itself an interval: they
// overlap in at least a point, or they abut and at least one side includes
// the touch point.
bool joinable(const Interval& a, const Interval& b);

// Merges a finite batch into maximal disjoint components, sorted by left
// endpoint. Abutting open endpoints stay separate: (0,1/2) and (1/2,1) do
// not join because 1/2 itself is uncovered. Empty inputs are dropped.
std::vector<Interval> merge_components(std::vector<Interval> items);

// Exact Lebesgue measure of the union.
Q union_measure(const std::vector<Interval>& items);

bool in_union(const std::vector<Interval>& items, const Q& x);

// Right reach of contiguous coverage from x: the supremum r such that
// every point of [x, r) lies in the union. Returns x when x itself is
// uncovered (reach zero). The reach stops at the first uncovered point, so
// abutting open intervals stop it at their shared endpoint.
Q coverage_reach(const std::vector<Interval>& items, const Q& x);

// Sum of component lengths strictly to the right of x, counting the
// remaining part of a component that straddles x.
Q measure_right_of(const std::vector<Interval>& items, const Q& x);

// True when [l, r] with the given endpoint flags lies inside a single item
// of the (unmerged) list.
bool contained_in_one(const std::vector<Interval>& items, const Interval& needle);

}  // namespace semireal
