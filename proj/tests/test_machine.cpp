#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "semireal/errors.hpp"
#include "semireal/machine.hpp"

using namespace semireal;

namespace {

Machine two_entry() {
  // "0" prints 5 at time 7, "10" prints 3 at time 2
  return load_machine("program:0 output:5 time:7\nprogram:10 output:3 time:2\n");
}

}  // namespace

TEST_CASE("table loading, validation, kraft") {
  Machine m = two_entry();
  REQUIRE(m.entries.size() == 2);
  CHECK(kraft_sum(m) == Q(3, 4));

  CHECK_NOTHROW(load_machine("# comment\n\nprogram:0 output:1 time:1\n"));
  CHECK_THROWS_AS(load_machine("program:0 output:1 time:1\nprogram:01 output:2 time:1\n"),
                  PrefixFreeViolation);
  CHECK_THROWS_AS(load_machine("program:0 output:1 time:1\nprogram:0 output:2 time:3\n"),
                  PrefixFreeViolation);
  CHECK_THROWS_AS(load_machine("program:2 output:1 time:1\n"), ParseError);
  CHECK_THROWS_AS(load_machine("program:0 output:1 time:0\n"), ParseError);
  CHECK_THROWS_AS(load_machine("program:0 output:1\n"), ParseError);
}

TEST_CASE("enumeration order is (time, program)") {
  Machine m = load_machine(
      "program:0 output:1 time:5\n"
      "program:11 output:2 time:2\n"
      "program:10 output:3 time:2\n");
  auto r = revealed_by(m, 5);
  REQUIRE(r.size() == 3);
  CHECK(r[0].program == "10");
  CHECK(r[1].program == "11");
  CHECK(r[2].program == "0");
  CHECK(revealed_by(m, 1).empty());
  CHECK(revealed_by(m, 2).size() == 2);
}

TEST_CASE("output masses accumulate with the time cutoff") {
  Machine m = two_entry();
  FuelMeter meter(Fuel{1u << 16});

  Semimeasure late = apriori(m, Fuel{10});
  CHECK(late.declared_total == Q(3, 4));
  CHECK(semimeasure_value(late, 5, 8, meter) == Q(1, 2));
  CHECK(semimeasure_value(late, 3, 8, meter) == Q(1, 4));
  CHECK(semimeasure_value(late, 0, 8, meter) == Q(0));

  Semimeasure early = apriori(m, Fuel{3});
  CHECK(semimeasure_value(early, 5, 8, meter) == Q(0));
  CHECK(semimeasure_value(early, 3, 8, meter) == Q(1, 4));

  CHECK(semimeasure_prefix_total(late, 6, 8, meter) == Q(3, 4));
}

TEST_CASE("shortest revealed length and halting mass") {
  Machine m = two_entry();
  auto k5 = kp(m, 5, Fuel{7});
  REQUIRE(k5.confirmed());
  CHECK(*k5.value == 1);
  CHECK(!kp(m, 5, Fuel{6}).confirmed());
  auto k3 = kp(m, 3, Fuel{2});
  REQUIRE(k3.confirmed());
  CHECK(*k3.value == 2);
  CHECK(!kp(m, 4, Fuel{1u << 20}).confirmed());

  CHECK(omega(m, Fuel{1}) == Q(0));
  CHECK(omega(m, Fuel{2}) == Q(1, 4));
  CHECK(omega(m, Fuel{6}) == Q(1, 4));
  CHECK(omega(m, Fuel{7}) == Q(3, 4));
  CHECK(omega(m, Fuel{1000}) == kraft_sum(m));
}

TEST_CASE("largest cheap output and its tail-mass variant") {
  Machine m = two_entry();
  CHECK(bp(m, 1) == 5);
  CHECK(bp(m, 2) == 5);
  CHECK(bp(m, 0) == 0);
  CHECK(bp_prime(m, 1) == 5);
  CHECK(bp_prime(m, 2) == 5);

  CHECK(busy_time(m, 1) == 7);
  CHECK(busy_time(m, 2) == 7);
  CHECK(busy_time(m, 0) == 0);

  // the tail variant never lags the direct one
  Machine s = selftiming_machine(8);
  for (std::uint64_t b = 0; b <= 10; ++b) CHECK(bp(s, b) <= bp_prime(s, b));
  Machine r = random_machine(42, 12, 40, 100);
  for (std::uint64_t b = 0; b <= 12; ++b) CHECK(bp(r, b) <= bp_prime(r, b));
}

TEST_CASE("self-timing table exhibits cheap witnesses for long times") {
  Machine s = selftiming_machine(8);
  REQUIRE(s.entries.size() == 8);
  CHECK_NOTHROW(validate_machine(s));
  CHECK(kraft_sum(s) == Q(255, 256));
  for (unsigned b = 1; b <= 8; ++b) {
    CHECK(busy_time(s, b) == (1ull << b));
    auto k = kp(s, 1ull << b, Fuel{1ull << b});
    REQUIRE(k.confirmed());
    CHECK(*k.value == b);
  }
  CHECK(bp(s, 4) == 16);
}

TEST_CASE("generated tables are reproducible and valid") {
  Machine a = random_machine(7, 20, 50, 200);
  Machine b = random_machine(7, 20, 50, 200);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].program == b.entries[i].program);
    CHECK(a.entries[i].output == b.entries[i].output);
    CHECK(a.entries[i].time == b.entries[i].time);
  }
  CHECK_NOTHROW(validate_machine(a));
  CHECK(kraft_sum(a) <= Q(1));
  Machine c = random_machine(8, 20, 50, 200);
  bool same = a.entries.size() == c.entries.size();
  if (same)
    for (std::size_t i = 0; i < a.entries.size(); ++i)
      same = same && a.entries[i].program == c.entries[i].program;
  CHECK(!same);
}

TEST_CASE("convergence modulus against a declared limit") {
  LscReal a = LscReal::sequence_rule(
      [](std::uint64_t i) -> Q { return Q(1) - q_pow2(-static_cast<long>(i) - 1); },
      Q(1));
  CHECK(modulus(a, Q(1, 4), Q(1)) == 1);  // 7/8 is the first within 1/4
  CHECK(modulus(a, Q(1), Q(1)) == 0);
  CHECK(modulus(a, Q(1, 1024), Q(1)) == 9);
  CHECK_THROWS_AS(modulus(a, Q(1, 4), Q(3, 4)), LimitInconsistent);  // a_1 hits it
  CHECK_THROWS_AS(modulus(a, Q(0), Q(1)), DomainError);

  LscReal fin = LscReal::sequence_literal({Q(1, 4), Q(1, 2)});
  CHECK_THROWS_AS(modulus(fin, Q(1, 8), Q(1)), LimitInconsistent);  // never gets close
  CHECK(modulus(fin, Q(2, 3), Q(1)) == 0);
}

TEST_CASE("term-to-mass ratios at a cutoff") {
  Machine m = two_entry();
  LscReal r = LscReal::series_rule(
      [](std::uint64_t i) -> Q { return q_pow2(-static_cast<long>(i) - 3); });
  RatioTrace t = solovay_ratio(r, m, Fuel{64});
  std::set<std::uint64_t> zero(t.zero_mass.begin(), t.zero_mass.end());
  CHECK(zero.count(0) == 1);
  CHECK(zero.count(4) == 1);
  CHECK(zero.count(3) == 0);
  bool saw3 = false, saw5 = false;
  for (const auto& [idx, ratio] : t.ratios) {
    if (idx == 3) {
      saw3 = true;
      CHECK(ratio == Q(1, 16));  // (1/64) / (1/4)
    }
    if (idx == 5) {
      saw5 = true;
      CHECK(ratio == Q(1, 128));  // (1/256) / (1/2)
    }
  }
  CHECK(saw3);
  CHECK(saw5);
  CHECK_THROWS_AS(solovay_ratio(LscReal::sequence_literal({Q(1, 2)}), m, Fuel{64}),
                  DomainError);
}

TEST_CASE("threshold table writes each crossed power once") {
  // 3/8 arriving as 1/4 then 1/8 crosses only 1/4
  SolovayTable t1 = build_solovay_table({{Q(1, 4), Q(1, 8)}});
  REQUIRE(t1.a.size() == 1);
  CHECK(t1.a[0] == std::vector<Q>{Q(1, 4), Q(0)});
  CHECK(t1.crossed[0] == std::vector<Q>{Q(1, 4)});

  // a single big step writes only the largest power it crossed
  SolovayTable t2 = build_solovay_table({{Q(3, 4)}});
  CHECK(t2.a[0] == std::vector<Q>{Q(1, 2)});

  SolovayTable t3 = build_solovay_table({{Q(1, 4), Q(1, 4), Q(1, 2)}});
  CHECK(t3.a[0] == std::vector<Q>{Q(1, 4), Q(1, 2), Q(0)});
  CHECK(t3.crossed[0] == std::vector<Q>{Q(1, 4), Q(1, 2)});

  CHECK_THROWS_AS(build_solovay_table({{Q(-1, 4)}}), DomainError);

  // written cells bracket the row mass: max >= mass/2, total < 2*mass
  std::vector<std::vector<Q>> rows = {
      {Q(1, 3), Q(1, 3), Q(1, 5)},
      {Q(1, 100), Q(1, 100), Q(1, 2)},
      {Q(7, 16)},
      {Q(1, 64), Q(1, 64), Q(1, 64), Q(1, 64)},
  };
  SolovayTable t = build_solovay_table(rows);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Q mass = 0, wrote = 0, top = 0;
    for (const Q& d : rows[i]) mass += d;
    for (const Q& v : t.a[i]) {
      wrote += v;
      top = q_max(top, v);
    }
    CHECK(wrote < 2 * mass);
    CHECK(top >= mass / 2);
  }
}

TEST_CASE("output encoding reaches every rational deterministically") {
  for (std::uint64_t i = 0; i < 30; ++i)
    for (std::uint64_t j = 0; j < 30; ++j) {
      auto [x, y] = unpair_index(pair_index(i, j));
      CHECK(x == i);
      CHECK(y == j);
    }
  CHECK(index_rational(0) == Q(0));
  std::set<Q> seen;
  for (std::uint64_t n = 0; n < 200; ++n) seen.insert(index_rational(n));
  CHECK(seen.count(Q(1)) == 1);
  CHECK(seen.count(Q(-1)) == 1);
  CHECK(seen.count(Q(1, 2)) == 1);
  CHECK(seen.count(Q(-1, 2)) == 1);
  CHECK(seen.count(Q(2)) == 1);
  CHECK(seen.count(Q(1, 3)) == 1);
}
