#include "semireal/interval.hpp"

#include <algorithm>

#include "semireal/errors.hpp"

namespace semireal {

std::string openness_str(const Interval& iv) {
  if (iv.left_closed && iv.right_closed) return "closed";
  if (!iv.left_closed && !iv.right_closed) return "open";
  return iv.left_closed ? "left_closed" : "right_closed";
}

void set_openness(Interval& iv, const std::string& token) {
  if (token == "open") {
    iv.left_closed = iv.right_closed = false;
  } else if (token == "closed") {
    iv.left_closed = iv.right_closed = true;
  } else if (token == "left_closed") {
    iv.left_closed = true;
    iv.right_closed = false;
  } else if (token == "right_closed") {
    iv.left_closed = false;
    iv.right_closed = true;
  } else {
    throw ParseError("unknown openness '" + token + "'");
  }
}

bool joinable(const Interval& a, const Interval& b) {
  const Interval& lo = (a.left < b.left || (a.left == b.left && a.left_closed)) ? a : b;
  const Interval& hi = (&lo == &a) ? b : a;
  if (hi.left < lo.right) return true;
  if (hi.left > lo.right) return false;
  // touching at one point: covered iff either side includes it
  return lo.right_closed || hi.left_closed;
}

std::vector<Interval> merge_components(std::vector<Interval> items) {
  items.erase(std::remove_if(items.begin(), items.end(),
                             [](const Interval& iv) { return iv.empty(); }),
              items.end());
  std::sort(items.begin(), items.end(), [](const Interval& a, const Interval& b) {
    if (a.left != b.left) return a.left < b.left;
    if (a.left_closed != b.left_closed) return a.left_closed;
    return a.right < b.right;
  });
  std::vector<Interval> out;
  for (const Interval& iv : items) {
    if (!out.empty() && joinable(out.back(), iv)) {
      Interval& c = out.back();
      if (iv.right > c.right) {
        c.right = iv.right;
        c.right_closed = iv.right_closed;
      } else if (iv.right == c.right) {
        c.right_closed = c.right_closed || iv.right_closed;
      }
      if (iv.left == c.left) c.left_closed = c.left_closed || iv.left_closed;
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

Q union_measure(const std::vector<Interval>& items) {
  Q total = 0;
  for (const Interval& c : merge_components(items)) total += c.length();
  return total;
}

bool in_union(const std::vector<Interval>& items, const Q& x) {
  for (const Interval& iv : items)
    if (iv.contains(x)) return true;
  return false;
}

Q coverage_reach(const std::vector<Interval>& items, const Q& x) {
  auto comps = merge_components(items);
  // components are disjoint and sorted; at most one can contain x
  for (const Interval& c : comps) {
    if (c.contains(x)) {
      // [x, c.right) is covered; whether the reach extends past c.right
      // would require the touch point itself, which disjointness rules out
      return c.right;
    }
  }
  return x;
}

Q measure_right_of(const std::vector<Interval>& items, const Q& x) {
  Q total = 0;
  for (const Interval& c : merge_components(items)) {
    if (c.right <= x) continue;
    total += c.right - q_max(c.left, x);
  }
  return total;
}

bool contained_in_one(const std::vector<Interval>& items, const Interval& needle) {
  for (const Interval& iv : items) {
    bool left_ok = iv.left < needle.left ||
                   (iv.left == needle.left && (iv.left_closed || !needle.left_closed));
    bool right_ok = iv.right > needle.right ||
                    (iv.right == needle.right && (iv.right_closed || !needle.right_closed));
    if (left_ok && right_ok && !iv.empty()) return true;
  }
  return false;
}

}  // namespace semireal
