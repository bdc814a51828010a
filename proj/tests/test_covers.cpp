#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "semireal/covers.hpp"
#include "semireal/errors.hpp"
#include "semireal/reduce.hpp"

using namespace semireal;

namespace {

LscReal geom_to(const Q& q) {
  return LscReal::sequence_rule(
      [q](std::uint64_t i) -> Q { return q - q * q_pow2(-static_cast<long>(i) - 1); }, q);
}

}  // namespace

TEST_CASE("prefix observation enforces the declared budget") {
  Cover ok = cover_literal({open_iv(Q(0), Q(1, 4)), open_iv(Q(1, 2), Q(5, 8))});
  CHECK(total_length(ok, Fuel{1000}) == Q(3, 8));

  Cover tight = cover_literal({open_iv(Q(0), Q(1, 2)), open_iv(Q(0), Q(1, 2))}, Q(3, 4));
  FuelMeter m(Fuel{1000});
  CHECK_THROWS_AS(cover_prefix(tight, m), LengthBudgetExceeded);

  Cover exact = cover_literal({open_iv(Q(0), Q(1, 2)), open_iv(Q(0), Q(1, 2))}, Q(1));
  FuelMeter m2(Fuel{1000});
  auto p = cover_prefix(exact, m2);
  CHECK(p.ended);
  CHECK(p.items.size() == 2);

  // max_items stops early, before the budget check would fire
  FuelMeter m3(Fuel{1000});
  CHECK(cover_prefix(tight, m3, 1).items.size() == 1);
}

TEST_CASE("membership needs a proof, not just proximity") {
  Cover cv = cover_literal({open_iv(Q(1, 4), Q(3, 4))});

  // bounded approach from inside: confirmed
  auto v = contains(cv, geom_to(Q(1, 2)), Fuel{4000});
  REQUIRE(v.confirmed());
  CHECK(*v.value == 0);

  // same approximations without the upper bound: nothing provable
  LscReal unbounded = LscReal::sequence_rule(
      [](std::uint64_t i) -> Q { return Q(1, 2) - q_pow2(-static_cast<long>(i) - 2); });
  CHECK(!contains(cv, unbounded, Fuel{4000}).confirmed());

  // exhausted presentation pins the limit exactly
  CHECK(contains(cv, LscReal::sequence_literal({Q(3, 8)}), Fuel{1000}).confirmed());
  // the pinned limit sits on an open endpoint: outside
  Cover half_open = cover_literal({open_iv(Q(1, 2), Q(3, 4))});
  CHECK(!contains(half_open, LscReal::sequence_literal({Q(1, 2)}), Fuel{1000}).confirmed());
  Cover half_closed = cover_literal({closed_iv(Q(1, 2), Q(3, 4))});
  CHECK(contains(half_closed, LscReal::sequence_literal({Q(1, 2)}), Fuel{1000}).confirmed());

  // the witnessing index skips intervals the bound cannot settle
  Cover two = cover_literal({open_iv(Q(0), Q(1, 8)), open_iv(Q(1, 4), Q(3, 4))});
  auto w = contains(two, geom_to(Q(1, 2)), Fuel{4000});
  REQUIRE(w.confirmed());
  CHECK(*w.value == 1);
}

TEST_CASE("rebasing a cover through a translation") {
  LscReal alpha = geom_to(Q(1, 2));
  ReductionWitness ident = witness_from_sum(alpha, LscReal::series_literal({Q(0)}));

  Cover cv = cover_literal({open_iv(Q(0), Q(1, 8)),       // left of the limit: dropped
                            open_iv(Q(3, 8), Q(5, 8)),    // holds the limit: re-emitted
                            open_iv(Q(9, 16), Q(11, 16))},  // never entered: waits
                           Q(1, 2));
  Cover out = transform_cover(cv, ident, alpha, alpha);
  CHECK(out.length_budget == Q(1, 2));

  FuelMeter m(Fuel{1u << 16});
  auto first = out.items.at(0, m);
  REQUIRE(first.ok());
  CHECK(*first == open_iv(Q(15, 32), Q(23, 32)));
  CHECK((*first).length() == Q(1, 4));  // lengths are preserved

  // the re-emitted interval still holds the limit
  Cover single = cover_literal({*first});
  CHECK(contains(single, alpha, Fuel{4000}).confirmed());

  // the out-of-reach interval keeps the output waiting, not ended
  FuelMeter m2(Fuel{20000});
  auto second = out.items.at(1, m2);
  CHECK(second.starved());
}

TEST_CASE("a finite driver flushes the queue and ends the output") {
  LscReal alpha = LscReal::sequence_literal({Q(1, 4), Q(1, 2)});
  ReductionWitness ident = witness_from_sum(alpha, LscReal::series_literal({Q(0)}));
  // the driver's last value 1/4 sits strictly inside the first interval;
  // the queued interval right of it can never be entered once the driver
  // is exhausted, so it is discarded and the output ends after one item
  LscReal beta = LscReal::sequence_literal({Q(1, 4)});
  Cover cv = cover_literal({open_iv(Q(1, 8), Q(3, 8)), open_iv(Q(3, 4), Q(1))});
  Cover out = transform_cover(cv, ident, alpha, beta);
  FuelMeter m(Fuel{1u << 16});
  auto first = out.items.at(0, m);
  REQUIRE(first.ok());
  CHECK(*first == open_iv(Q(1, 2), Q(3, 4)));
  auto second = out.items.at(1, m);
  CHECK(second.ended());
}

TEST_CASE("density certificate bounds the union") {
  std::vector<Interval> ivs = {
      open_iv(Q(0), Q(1, 4)),
      open_iv(Q(1, 2), Q(3, 4)),
      open_iv(Q(1, 16), Q(3, 16)),  // inside the first: redundant
  };
  std::vector<std::pair<Q, Q>> pts = {{Q(1, 8), Q(2, 9)}, {Q(5, 8), Q(21, 100)}};
  Q c(8, 5);

  UnionBoundResult r = union_bound(ivs, pts, c);
  CHECK(r.bound == Q(5, 2));
  CHECK(r.measure == Q(1, 2));
  REQUIRE(r.kept.size() == 2);
  CHECK(r.kept[0] == open_iv(Q(0), Q(1, 4)));
  CHECK(r.kept[1] == open_iv(Q(1, 2), Q(3, 4)));
  CHECK(r.even == std::vector<std::size_t>{0});
  CHECK(r.odd == std::vector<std::size_t>{1});

  // density is strict: mass exactly (c/2)*length fails
  std::vector<std::pair<Q, Q>> boundary = {{Q(1, 8), Q(1, 5)}, {Q(5, 8), Q(21, 100)}};
  CHECK_THROWS_AS(union_bound(ivs, boundary, c), DensityViolated);

  CHECK_THROWS_AS(union_bound(ivs, pts, Q(0)), DomainError);
  CHECK_THROWS_AS(union_bound(ivs, {{Q(1, 8), Q(-1, 9)}}, c), DomainError);
  CHECK_THROWS_AS(union_bound(ivs, {{Q(1, 8), Q(3, 4)}, {Q(5, 8), Q(1, 2)}}, c),
                  DomainError);
}

TEST_CASE("improvement neighborhoods stay within their budget") {
  Machine m = load_machine("program:0 output:5 time:7\nprogram:10 output:3 time:2\n");
  Cover u3 = u_c_cover(m, 3, Fuel{10});
  CHECK(u3.length_budget == Q(1, 4));

  FuelMeter meter(Fuel{1000});
  auto p = cover_prefix(u3, meter);
  REQUIRE(p.ended);
  REQUIRE(p.items.size() == 2);
  // time order: output 3 (encoded 1/2) first, then output 5 (encoded -1/2)
  CHECK(p.items[0] == open_iv(Q(15, 32), Q(17, 32)));
  CHECK(p.items[1] == open_iv(Q(-9, 16), Q(-7, 16)));

  // earlier cutoff hides the slow entry
  FuelMeter meter2(Fuel{1000});
  auto p2 = cover_prefix(u_c_cover(m, 3, Fuel{2}), meter2);
  REQUIRE(p2.ended);
  CHECK(p2.items.size() == 1);

  // a later shorter program for the same output fires again
  Machine imp = load_machine(
      "program:11 output:5 time:1\nprogram:0 output:5 time:9\n");
  FuelMeter meter3(Fuel{1000});
  auto p3 = cover_prefix(u_c_cover(imp, 2, Fuel{9}), meter3);
  REQUIRE(p3.items.size() == 2);
  CHECK(p3.items[0].length() == Q(2) * q_pow2(-4));
  CHECK(p3.items[1].length() == Q(2) * q_pow2(-3));
}

TEST_CASE("cover text round trip") {
  std::string text = "0/1 1/2 open\n1/2 1/1 left_closed\n-3/4 -1/4 closed\n";
  Cover cv = load_cover(text);
  CHECK(save_cover(cv, 100, Fuel{1000}) == text);
  // loading accepts integer shorthand, saving is always canonical
  CHECK(save_cover(load_cover("0 1 open\n"), 100, Fuel{1000}) == "0/1 1/1 open\n");
  CHECK_THROWS_AS(load_cover("1 0 open\n"), ParseError);
  CHECK_THROWS_AS(load_cover("0 1\n"), ParseError);
  CHECK_THROWS_AS(load_cover("0 1 ajar\n"), ParseError);
}
