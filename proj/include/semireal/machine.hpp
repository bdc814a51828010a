#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semireal/fuel.hpp"
#include "semireal/lsc_real.hpp"
#include "semireal/q.hpp"
#include "semireal/semimeasure.hpp"

namespace semireal {

// One halting computation: a binary program, what it printed, and when it
// stopped. Times are positive so "revealed by time t" is monotone from t=0.
struct MachineEntry {
  std::string program;  // nonempty string over {0,1}
  std::uint64_t output;
  std::uint64_t time;
};

// Finite prefix-free machine. The table is validated on construction: no
// program prefixes another, programs are unique, and the Kraft sum
// sum(2^-|p|) stays at most 1. All derived quantities are exact because the
// table is finite; none of them pretend to universality.
struct Machine {
  std::vector<MachineEntry> entries;
};

// Parses lines `program:<bits> output:<int> time:<int>`, '#' comments.
Machine load_machine(const std::string& text);
Machine load_machine_file(const std::string& path);

// Validation used by the loaders and the generators.
void validate_machine(const Machine& m);

Q kraft_sum(const Machine& m);

// Entries with time <= cutoff, sorted by (time, program): the one
// observable enumeration order. Fuel for machine operations is the running
// time cutoff.
std::vector<MachineEntry> revealed_by(const Machine& m, std::uint64_t cutoff);

// Output-mass semimeasure: weight(i) accumulates 2^-|p| over revealed
// entries printing i, in enumeration order, and ends after the last
// (the table is finite, so the final value is certified).
Semimeasure apriori(const Machine& m, Fuel fuel);

// Length of the shortest program printing i among entries revealed within
// fuel; Pending when none (on a finite table, outputs never printed stay
// Pending at every fuel).
Verdict<std::uint64_t> kp(const Machine& m, std::uint64_t i, Fuel fuel);

// Halting mass revealed within fuel; non-decreasing in fuel, equals the
// Kraft sum once every entry's time has passed.
Q omega(const Machine& m, Fuel fuel);

// Largest n whose shortest-program length is at most b (0 when no output
// qualifies). Exact: uses the full table.
std::uint64_t bp(const Machine& m, std::uint64_t b);

// Smallest N with sum of masses of outputs above N below 2^-b. Exact.
std::uint64_t bp_prime(const Machine& m, std::uint64_t b);

// Longest running time among entries with |p| <= b (0 when none). Exact.
std::uint64_t busy_time(const Machine& m, std::uint64_t b);

// Smallest N such that every approximation past N sits within eps of the
// declared limit (certified by weak monotonicity once one does). Throws
// LimitInconsistent if an approximation reaches or passes the limit.
std::uint64_t modulus(const LscReal& a, const Q& eps, const Q& known_limit);

// Per-index ratio of series terms to output masses at the given time
// cutoff. Indices whose mass is zero at that cutoff are flagged instead.
struct RatioTrace {
  std::vector<std::pair<std::uint64_t, Q>> ratios;
  std::vector<std::uint64_t> zero_mass;
};
RatioTrace solovay_ratio(const LscReal& r, const Machine& m, Fuel fuel);

// Threshold table: processing each row left to right, whenever the running
// row sum first reaches a new power 2^-k (k >= 1), that power is written at
// the current column; all other cells stay zero.
struct SolovayTable {
  std::vector<std::vector<Q>> a;        // same shape as the input rows
  std::vector<std::vector<Q>> crossed;  // per row, thresholds in write order
};
SolovayTable build_solovay_table(const std::vector<std::vector<Q>>& rows);

// Machine whose programs are 1^(len-1) 0 for len = 1..max_len, each taking
// time 2^len and printing its own running time. Exhibits short programs for
// the busiest times: the shortest program for busy_time(b) has length b.
Machine selftiming_machine(unsigned max_len);

// Deterministic pseudo-random prefix-free table: `count` programs drawn as
// leaves of a random binary code tree, outputs below `output_range`, times
// below `time_range`. Same seed, same machine.
Machine random_machine(std::uint64_t seed, std::size_t count,
                       std::uint64_t output_range, std::uint64_t time_range);

// Fixed encoding of machine outputs as rationals, used by neighborhood
// covers: 0 -> 0; for n >= 1, split n-1 into the diagonal pair (i, j) and
// read sign-alternating numerator i over denominator j+1. Not injective;
// only determinism matters here.
Q index_rational(std::uint64_t n);

// Diagonal pairing: (i, j) -> (i+j)(i+j+1)/2 + j, with its inverse.
std::uint64_t pair_index(std::uint64_t i, std::uint64_t j);
std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t n);

}  // namespace semireal
