#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "semireal/errors.hpp"
#include "semireal/machine.hpp"
#include "semireal/transforms.hpp"

using namespace semireal;

namespace {

Q term_at(const LscReal& x, std::uint64_t i, std::uint64_t fuel = 1u << 18) {
  FuelMeter m(Fuel{fuel});
  auto p = x.term(i, m);
  REQUIRE(p.ok());
  return *p;
}

std::vector<Q> all_terms(const LscReal& x, std::uint64_t fuel = 1u << 18) {
  FuelMeter m(Fuel{fuel});
  std::vector<Q> out;
  for (std::uint64_t i = 0;; ++i) {
    auto p = x.term(i, m);
    if (p.ended()) break;
    REQUIRE(p.ok());
    out.push_back(*p);
  }
  return out;
}

Q stage_value(const MemoStream<Q>& s, std::uint64_t stage, std::uint64_t fuel = 1u << 18) {
  FuelMeter m(Fuel{fuel});
  MemoStream<Q> copy = s;
  auto p = copy.at(stage, m);
  REQUIRE(p.ok());
  return *p;
}

Semimeasure row_table(std::map<std::uint64_t, std::vector<Q>> stages, Q declared) {
  auto shared = std::make_shared<std::map<std::uint64_t, std::vector<Q>>>(std::move(stages));
  Semimeasure m;
  m.declared_total = declared;
  m.weight = [shared](std::uint64_t i) {
    auto it = shared->find(i);
    if (it == shared->end()) return stream_from_vector(std::vector<Q>{});
    return stream_from_vector(it->second);
  };
  return m;
}

// walk the mesh, cutting at the original partial sums; exact or REQUIRE fails
std::vector<Q> group_back(const std::vector<Q>& mesh, const std::vector<Q>& original) {
  std::vector<Q> grouped;
  std::size_t k = 0;
  for (const Q& t : original) {
    Q acc = 0;
    while (acc < t) {
      REQUIRE(k < mesh.size());
      acc += mesh[k];
      k += 1;
    }
    REQUIRE(acc == t);
    grouped.push_back(acc);
  }
  return grouped;
}

}  // namespace

TEST_CASE("row sums collapse a double series") {
  DoubleSeries top = load_double_series("0 0 1/2\n0 1 1/4\n0 2 1/8\n");
  LscReal a = regroup(top);
  CHECK(term_at(a, 0) == Q(7, 8));
  CHECK(term_at(a, 1) == Q(0));
  CHECK(term_at(a, 5) == Q(0));

  DoubleSeries diag = load_double_series("0 0 1/2\n1 1 1/4\n2 2 1/8\n");
  LscReal b = regroup(diag);
  CHECK(term_at(b, 0) == Q(1, 2));
  CHECK(term_at(b, 1) == Q(1, 4));
  CHECK(term_at(b, 2) == Q(1, 8));
}

TEST_CASE("regrouping preserves the total of a finite instance") {
  const std::string text =
      "0 0 1/16\n0 3 1/8\n1 1 1/32\n1 2 1/32\n2 0 1/4\n2 5 1/64\n";
  DoubleSeries d = load_double_series(text);
  Q direct = 0;
  for (std::uint64_t i = 0; i < 3; ++i)
    for (std::uint64_t j : d.row_support(i)) direct += d.term(i, j);
  LscReal rows = regroup(d);
  Q via_rows = term_at(rows, 0) + term_at(rows, 1) + term_at(rows, 2);
  CHECK(direct == via_rows);
  CHECK(via_rows == Q(1, 16) + Q(1, 8) + Q(1, 32) + Q(1, 32) + Q(1, 4) + Q(1, 64));
}

TEST_CASE("support metadata must be sorted") {
  DoubleSeries bad;
  bad.term = [](std::uint64_t, std::uint64_t) -> Q { return Q(1, 8); };
  bad.row_support = [](std::uint64_t) { return std::vector<std::uint64_t>{2, 1}; };
  CHECK_THROWS_AS(row_sum(bad, 0), RowNotFinite);
  Semimeasure m = row_table({{0, {Q(1, 2)}}}, Q(1, 2));
  Allocation al = allocate_mtilde(bad, m, Q(2));
  FuelMeter meter(Fuel{1000});
  CHECK_THROWS_AS(al.mtilde(0, 1).at(0, meter), RowNotFinite);
}

TEST_CASE("an unconstrained row allocates every cell at full scale") {
  DoubleSeries d = load_double_series("0 0 1/4\n0 1 1/8\n0 2 1/8\n");
  Semimeasure m = row_table({{0, {Q(1)}}}, Q(1));
  Allocation al = allocate_mtilde(d, m, Q(2));
  CHECK(al.c == Q(2));
  CHECK(stage_value(al.mtilde(0, 0), 0) == Q(1, 2));
  CHECK(stage_value(al.mtilde(0, 1), 0) == Q(1, 4));
  CHECK(stage_value(al.mtilde(0, 2), 0) == Q(1, 4));
  // off-support cells take nothing
  CHECK(stage_value(al.mtilde(0, 7), 0) == Q(0));
}

TEST_CASE("a zero budget row allocates nothing") {
  DoubleSeries d = load_double_series("0 0 1/4\n");
  Semimeasure m = row_table({{0, {Q(0)}}}, Q(1));
  Allocation al = allocate_mtilde(d, m, Q(4));
  CHECK(stage_value(al.mtilde(0, 0), 0) == Q(0));
}

TEST_CASE("rising budgets fill cells left to right up to their caps") {
  // caps at c=4: 1/8, 1/8, 1/4; budget reveals 1/16, 3/16, 1/2
  DoubleSeries d = load_double_series("0 0 1/32\n0 1 1/32\n0 2 1/16\n");
  Semimeasure m = row_table({{0, {Q(1, 16), Q(3, 16), Q(1, 2)}}}, Q(1, 2));
  Allocation al = allocate_mtilde(d, m, Q(4));

  CHECK(stage_value(al.mtilde(0, 0), 0) == Q(1, 16));
  CHECK(stage_value(al.mtilde(0, 1), 0) == Q(0));
  CHECK(stage_value(al.mtilde(0, 2), 0) == Q(0));

  CHECK(stage_value(al.mtilde(0, 0), 1) == Q(1, 8));
  CHECK(stage_value(al.mtilde(0, 1), 1) == Q(1, 16));
  CHECK(stage_value(al.mtilde(0, 2), 1) == Q(0));

  CHECK(stage_value(al.mtilde(0, 0), 2) == Q(1, 8));
  CHECK(stage_value(al.mtilde(0, 1), 2) == Q(1, 8));
  CHECK(stage_value(al.mtilde(0, 2), 2) == Q(1, 4));

  // caps and row budget are respected at every stage, and levels never drop
  for (std::uint64_t s = 0; s < 3; ++s) {
    Q row = 0;
    for (std::uint64_t j = 0; j < 3; ++j) {
      Q v = stage_value(al.mtilde(0, j), s);
      CHECK(v <= Q(4) * d.term(0, j));
      if (s > 0) CHECK(v >= stage_value(al.mtilde(0, j), s - 1));
      row += v;
    }
    CHECK(row <= stage_value(m.weight(0), s));
  }

  // the budget stream ends after three reveals, so the cells end too
  FuelMeter meter(Fuel{1000});
  CHECK(al.mtilde(0, 0).at(3, meter).ended());
}

TEST_CASE("a constrained row spends exactly its final budget") {
  // c * (row sum) = 2 but the budget tops out at 1
  DoubleSeries d = load_double_series("0 0 1/4\n0 1 1/8\n0 2 1/8\n");
  Semimeasure m = row_table({{0, {Q(1, 2), Q(1)}}}, Q(1));
  Allocation al = allocate_mtilde(d, m, Q(4));
  Q total = 0;
  for (std::uint64_t j = 0; j < 3; ++j) total += stage_value(al.mtilde(0, j), 1);
  CHECK(total == Q(1));
  CHECK(stage_value(al.mtilde(0, 0), 1) == Q(1));  // first cap 1 soaks it all
  CHECK_THROWS_AS(allocate_mtilde(d, m, Q(0)), DomainError);
}

TEST_CASE("combined levels mix allocations dyadically") {
  DoubleSeries d = load_double_series("0 0 1/8\n");
  Semimeasure m = row_table({{0, {Q(1)}}}, Q(1));

  Semimeasure one = combine_allocations(d, m, 1);
  CHECK(one.declared_total == Q(1, 2));
  FuelMeter m1(Fuel{10000});
  CHECK(semimeasure_value(one, pair_index(0, 0), 1, m1) == Q(1, 4));

  // level 1 gives 1/2 * 1/2, level 2 caps at the budget: 1/4 * 1
  Semimeasure two = combine_allocations(d, m, 2);
  CHECK(two.declared_total == Q(3, 4));
  FuelMeter m2(Fuel{10000});
  Q mass = semimeasure_value(two, pair_index(0, 0), 1, m2);
  CHECK(mass == Q(1, 2));

  // the row satisfies 4 * (row sum) <= budget, so the ratio beats 2^-1
  CHECK(d.term(0, 0) / mass <= Q(1, 2));

  // off-instance pairs carry no mass
  FuelMeter m3(Fuel{10000});
  CHECK(semimeasure_value(two, pair_index(3, 5), 1, m3) == Q(0));

  FuelMeter m4(Fuel{100000});
  Q head = semimeasure_prefix_total(two, 30, 1, m4);
  CHECK(head <= two.declared_total);

  CHECK_THROWS_AS(combine_allocations(d, m, 0), DomainError);
}

TEST_CASE("mesh refinement draws both breakpoint families") {
  LscReal a = LscReal::series_literal({Q(1, 2), Q(1, 2)});
  LscReal b = LscReal::series_literal({Q(1, 4), Q(3, 4)});
  LscReal c = mesh_refine(a, b, Q(1));
  CHECK(all_terms(c) == std::vector<Q>{Q(1, 4), Q(1, 4), Q(1, 2)});

  // identical inputs refine to themselves
  CHECK(all_terms(mesh_refine(a, a, Q(1))) == std::vector<Q>{Q(1, 2), Q(1, 2)});

  // grouping the mesh at either family's breakpoints recovers that family
  auto mesh = all_terms(c);
  CHECK(group_back(mesh, {Q(1, 2), Q(1, 2)}) == std::vector<Q>{Q(1, 2), Q(1, 2)});
  CHECK(group_back(mesh, {Q(1, 4), Q(3, 4)}) == std::vector<Q>{Q(1, 4), Q(3, 4)});

  // zero terms contribute no breakpoints
  LscReal az = LscReal::series_literal({Q(1, 2), Q(0), Q(1, 2)});
  CHECK(all_terms(mesh_refine(az, b, Q(1))) == std::vector<Q>{Q(1, 4), Q(1, 4), Q(1, 2)});
}

TEST_CASE("mesh refinement rejects bad inputs") {
  LscReal a = LscReal::series_literal({Q(1, 2), Q(1, 2)});
  LscReal b = LscReal::series_literal({Q(1, 4), Q(3, 4)});
  CHECK_THROWS_AS(mesh_refine(a, b, Q(2)), SumMismatch);
  LscReal shorter = LscReal::series_literal({Q(1, 4), Q(1, 2)});
  CHECK_THROWS_AS(mesh_refine(a, shorter, Q(1)), SumMismatch);
  LscReal neg = LscReal::series_literal({Q(3, 2), Q(-1, 2)});
  CHECK_THROWS_AS(mesh_refine(a, neg, Q(1)), DomainError);
  LscReal seq = LscReal::sequence_literal({Q(1, 4), Q(1, 2)});
  CHECK_THROWS_AS(mesh_refine(seq, b, Q(1)), DomainError);
  LscReal endless = LscReal::series_rule([](std::uint64_t) -> Q { return Q(0); });
  CHECK_THROWS_AS(mesh_refine(endless, b, Q(1)), DomainError);
}

TEST_CASE("splitting big terms yields a non-increasing series of the same sum") {
  LscReal a = LscReal::series_literal({Q(1, 4), Q(1, 2)});
  CHECK(all_terms(split_to_nonincreasing(a)) ==
        std::vector<Q>{Q(1, 4), Q(1, 4), Q(1, 4)});

  LscReal already = LscReal::series_literal({Q(1, 2), Q(1, 3)});
  CHECK(all_terms(split_to_nonincreasing(already)) == std::vector<Q>{Q(1, 2), Q(1, 3)});

  LscReal zeros = LscReal::series_literal({Q(0), Q(1, 4), Q(0), Q(1, 2)});
  CHECK(all_terms(split_to_nonincreasing(zeros)) ==
        std::vector<Q>{Q(1, 4), Q(1, 4), Q(1, 4)});

  // non-integral ratio rounds the piece count up
  LscReal ragged = LscReal::series_literal({Q(1, 4), Q(5, 8)});
  auto pieces = all_terms(split_to_nonincreasing(ragged));
  CHECK(pieces == std::vector<Q>{Q(1, 4), Q(5, 24), Q(5, 24), Q(5, 24)});

  for (const auto& terms :
       {std::vector<Q>{Q(1, 8), Q(1, 2), Q(1, 16), Q(3, 8)}, std::vector<Q>{Q(1), Q(7, 3)}}) {
    Q total = 0;
    for (const Q& t : terms) total += t;
    auto split = all_terms(split_to_nonincreasing(LscReal::series_literal(terms)));
    Q sum = 0;
    for (std::size_t k = 0; k < split.size(); ++k) {
      if (k > 0) CHECK(split[k] <= split[k - 1]);
      sum += split[k];
    }
    CHECK(sum == total);
  }
}

TEST_CASE("covered term windows pick up boosted mass") {
  // windows: [0,1/8], [1/8,3/16], [3/16,7/32]
  LscReal r = LscReal::series_literal({Q(1, 8), Q(1, 16), Q(1, 32)});
  Cover cov = cover_literal({open_iv(Q(15, 128), Q(29, 128))}, Q(7, 64));
  Semimeasure m = cover_to_semimeasure(r, cov, 1);
  CHECK(m.declared_total == Q(1, 2));

  FuelMeter meter(Fuel{1u << 18});
  CHECK(semimeasure_value(m, 0, 3, meter) == Q(0));
  CHECK(semimeasure_value(m, 1, 3, meter) == Q(1, 8));
  CHECK(semimeasure_value(m, 2, 3, meter) == Q(1, 16));
  CHECK(semimeasure_value(m, 5, 3, meter) == Q(0));  // past the series end

  Q total = semimeasure_prefix_total(m, 4, 3, meter);
  CHECK(total == Q(3, 16));
  CHECK(total <= m.declared_total);
}

TEST_CASE("a larger cover only grows the boosted support") {
  LscReal r = LscReal::series_literal({Q(1, 8), Q(1, 16), Q(1, 32)});
  Cover big = cover_literal(
      {open_iv(Q(15, 128), Q(29, 128)), open_iv(Q(-1, 128), Q(17, 128))}, Q(1, 4));
  Semimeasure m = cover_to_semimeasure(r, big, 1);
  FuelMeter meter(Fuel{1u << 18});
  CHECK(semimeasure_value(m, 0, 3, meter) == Q(1, 4));
  CHECK(semimeasure_value(m, 1, 3, meter) == Q(1, 8));
  CHECK(semimeasure_value(m, 2, 3, meter) == Q(1, 16));
  CHECK(semimeasure_prefix_total(m, 4, 3, meter) == Q(7, 16));
}

TEST_CASE("an empty cover boosts nothing") {
  LscReal r = LscReal::series_literal({Q(1, 8)});
  Semimeasure m = cover_to_semimeasure(r, cover_literal({}, Q(0)), 1);
  FuelMeter meter(Fuel{1000});
  CHECK(semimeasure_value(m, 0, 2, meter) == Q(0));
  CHECK(semimeasure_prefix_total(m, 2, 2, meter) == Q(0));
}

TEST_CASE("budget discipline of the boost construction") {
  LscReal r = LscReal::series_literal({Q(1, 8)});
  CHECK_THROWS_AS(cover_to_semimeasure(r, cover_literal({}), 1), DomainError);
  CHECK_THROWS_AS(cover_to_semimeasure(r, cover_literal({}, Q(1, 2)), 1), DomainError);
  LscReal seq = LscReal::sequence_literal({Q(1, 8)});
  CHECK_THROWS_AS(cover_to_semimeasure(seq, cover_literal({}, Q(0)), 1), DomainError);

  // a cover that busts its own declared budget fails at observation time
  Cover lying = cover_literal({closed_iv(Q(0), Q(1, 2))}, Q(1, 8));
  Semimeasure m = cover_to_semimeasure(r, lying, 1);
  FuelMeter meter(Fuel{1000});
  CHECK_THROWS_AS(semimeasure_value(m, 0, 2, meter), LengthBudgetExceeded);
}

TEST_CASE("double series text form rejects malformed lines") {
  CHECK_THROWS_AS(load_double_series("0 1/2\n"), ParseError);
  CHECK_THROWS_AS(load_double_series("0 0 1/2 junk\n"), ParseError);
  CHECK_THROWS_AS(load_double_series("x 0 1/2\n"), ParseError);
  CHECK_THROWS_AS(load_double_series("0 0 1/2\n0 0 1/4\n"), ParseError);
  CHECK_THROWS_AS(load_double_series("0 0 -1/2\n"), DomainError);

  DoubleSeries d = load_double_series("# header\n\n1 2 3/4  # tail comment\n");
  CHECK(d.term(1, 2) == Q(3, 4));
  CHECK(d.term(0, 0) == Q(0));
  CHECK(d.row_support(1) == std::vector<std::uint64_t>{2});
  CHECK(d.row_support(9).empty());
}
