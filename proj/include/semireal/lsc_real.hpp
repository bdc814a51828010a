#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semireal/fuel.hpp"
#include "semireal/q.hpp"
#include "semireal/stream.hpp"

namespace semireal {

// A real presented from below, in one of three equivalent ways:
//   sequence — strictly increasing rationals a_0 < a_1 < ... converging up;
//   series   — increments d_i with d_i >= 0 for i > 0 (d_0 may be negative),
//              presenting sum(d_i);
//   leftcut  — an enumeration of rationals below the value, in any order.
//
// term(i) is the raw datum of the presentation (a_i, d_i, or the i-th
// enumerated rational); approx(i) is the derived weakly increasing lower
// approximation (a_i, d_0+...+d_i, or max of the first i+1 rationals).
// Literal-backed streams are finite and end; rule-backed streams never do.
// Invariants are enforced lazily on queried prefixes: sequences must strictly
// increase, series increments past index 0 must be non-negative, and no
// approximation may exceed known_sup when one is declared.
class LscReal {
 public:
  enum class Kind { sequence, series, leftcut };

  LscReal() = default;

  Kind kind() const { return kind_; }
  const std::optional<Q>& known_sup() const { return sup_; }
  LscReal with_known_sup(Q sup) const;

  Pull<Q> term(std::uint64_t i, FuelMeter& m) const;
  Pull<Q> approx(std::uint64_t i, FuelMeter& m) const;

  // Normalization to a strictly increasing sequence presentation. Series are
  // turned into partial sums with non-increases skipped (index remapping via
  // strict_partial_sums below); leftcuts into their monotone hull.
  LscReal as_sequence() const;

  static LscReal sequence_from(MemoStream<Q> terms, std::optional<Q> sup = {});
  static LscReal series_from(MemoStream<Q> terms, std::optional<Q> sup = {});
  static LscReal leftcut_from(MemoStream<Q> terms, std::optional<Q> sup = {});

  static LscReal sequence_literal(std::vector<Q> terms, std::optional<Q> sup = {});
  static LscReal series_literal(std::vector<Q> terms, std::optional<Q> sup = {});
  static LscReal leftcut_literal(std::vector<Q> terms, std::optional<Q> sup = {});

  static LscReal sequence_rule(std::function<Q(std::uint64_t)> rule,
                               std::optional<Q> sup = {});
  static LscReal series_rule(std::function<Q(std::uint64_t)> rule,
                             std::optional<Q> sup = {});

 private:
  LscReal(Kind k, MemoStream<Q> terms, MemoStream<Q> approx, std::optional<Q> sup)
      : kind_(k), terms_(std::move(terms)), approx_(std::move(approx)),
        sup_(std::move(sup)) {}

  Kind kind_ = Kind::sequence;
  MemoStream<Q> terms_;
  MemoStream<Q> approx_;
  std::optional<Q> sup_;
};

// Strictly increasing view of a weakly increasing stream: emits (source
// index, value) for each strict increase, skipping flats. This is the index
// remapping used when a series presentation is normalized.
MemoStream<std::pair<std::uint64_t, Q>> strictify(MemoStream<Q> weak);

// Partial sums of a series with non-increases skipped, with the source
// indices that produced each emitted sum.
MemoStream<std::pair<std::uint64_t, Q>> strict_partial_sums(const LscReal& series);

LscReal seq_from_series(const LscReal& s);
LscReal series_from_seq(const LscReal& a);

// Rationals provably below the limit reachable within fuel: all a_i - 2^-k,
// dovetailed over (i, k) by anti-diagonals (d = i + k ascending, i ascending
// within each d). Monotone in fuel.
std::set<Q> leftcut(const LscReal& a, Fuel fuel);

// Sequence presentation of sup of a raw (not necessarily monotone) stream:
// strictified running maximum.
LscReal monotone_hull(MemoStream<Q> values, std::optional<Q> sup = {});

// Termwise operations on sequence presentations (inputs of any kind are
// normalized first). scale rejects c <= 0.
LscReal sum(const LscReal& a, const LscReal& b);
LscReal scale(const LscReal& a, const Q& c);

// Scans approximations to the end of a finite presentation and returns the
// attained value; starves on rule-backed (infinite) streams.
Pull<Q> attained_value(const LscReal& x, FuelMeter& m);

// Text form:
//   kind sequence|series
//   <i> <num>/<den>      (i = 0,1,2,... in order)
// '#' starts a comment; blank lines are ignored. Sequence literals with
// equal adjacent terms are deduplicated on load; a decrease is an error.
LscReal load_lsc(const std::string& text);
LscReal load_lsc_file(const std::string& path);
std::string save_lsc(const LscReal& x, std::uint64_t max_terms, Fuel fuel);

}  // namespace semireal
