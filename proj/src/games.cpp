#include "semireal/games.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "semireal/errors.hpp"
#include "semireal/interval.hpp"

namespace semireal {

GameTrace play(const Strategy& s, const LscReal& a, const Q& epsilon, Fuel fuel) {
  if (epsilon <= 0) throw DomainError("allowance must be positive");
  FuelMeter m(fuel);
  GameTrace t;
  t.epsilon = epsilon;
  t.delta_total = 0;
  for (std::uint64_t i = 0;; ++i) {
    auto p = a.approx(i, m);
    if (!p.ok()) break;
    const Q v = *p;
    bool have_active = !t.predictions.empty() &&
                       t.predictions.back().status == Prediction::Status::active;
    if (have_active && v > t.predictions.back().base_value + t.predictions.back().delta) {
      t.predictions.back().status = Prediction::Status::violated;
      have_active = false;
    }
    if (have_active) continue;
    auto verdict = s.next_prediction(t, i, v, m);
    if (!verdict.confirmed()) break;  // the strategy's own bookkeeping starved
    if (!verdict.value->has_value()) continue;
    const Q d = **verdict.value;
    if (d < 0) throw DomainError("negative wager " + q_str(d));
    if (t.delta_total >= epsilon) throw StrategyOverspent();
    t.predictions.push_back(Prediction{i, v, d, Prediction::Status::active});
    t.delta_total += d;
  }
  if (!t.predictions.empty() &&
      t.predictions.back().status == Prediction::Status::active)
    t.predictions.back().status = Prediction::Status::standing;
  t.win_so_far = !t.predictions.empty() &&
                 t.predictions.back().status == Prediction::Status::standing &&
                 t.delta_total < epsilon;
  return t;
}

Strategy strategy_from_cover(const Cover& c) {
  struct St {
    Cover c;
    std::vector<Interval> discovered;
    std::uint64_t idx = 0;
    bool ended = false;
  };
  auto st = std::make_shared<St>(St{c, {}, 0, false});
  Strategy s;
  s.next_prediction = [st](const GameTrace&, std::uint64_t, const Q& v,
                           FuelMeter& m) -> Verdict<std::optional<Q>> {
    if (!st->ended) {
      // one discovery attempt per consultation; running dry here is not
      // fatal, the bet just uses what is already known
      auto p = st->c.items.at(st->idx, m);
      if (p.ok()) {
        st->discovered.push_back(*p);
        st->idx += 1;
      } else if (p.ended()) {
        st->ended = true;
      }
    }
    if (!in_union(st->discovered, v))
      return Verdict<std::optional<Q>>::of(std::nullopt);
    Q reach = coverage_reach(st->discovered, v);
    return Verdict<std::optional<Q>>::of(std::optional<Q>(Q(reach - v)));
  };
  return s;
}

Cover cover_from_strategy(const Strategy& s, const LscReal& a, const Q& epsilon,
                          Fuel fuel) {
  GameTrace t = play(s, a, epsilon, fuel);
  std::vector<Interval> items;
  for (const Prediction& p : t.predictions)
    items.push_back(closed_iv(p.base_value, Q(p.base_value + p.delta)));
  return cover_literal(std::move(items), epsilon);
}

Strategy sum_strategy(const Cover& cov_a, const Cover& cov_b, const LscReal& a,
                      const LscReal& b) {
  struct Side {
    Cover c;
    std::vector<Interval> discovered;
    std::uint64_t idx = 0;
    bool ended = false;
    LscReal r;
    std::optional<Q> last;
    bool r_ended = false;
  };
  auto sa = std::make_shared<Side>(Side{cov_a, {}, 0, false, a, std::nullopt, false});
  auto sb = std::make_shared<Side>(Side{cov_b, {}, 0, false, b, std::nullopt, false});
  Strategy s;
  s.next_prediction = [sa, sb](const GameTrace&, std::uint64_t i, const Q&,
                               FuelMeter& m) -> Verdict<std::optional<Q>> {
    for (Side* side : {sa.get(), sb.get()}) {
      if (!side->ended) {
        auto p = side->c.items.at(side->idx, m);
        if (p.ok()) {
          side->discovered.push_back(*p);
          side->idx += 1;
        } else if (p.ended()) {
          side->ended = true;
        }
      }
      if (!side->r_ended) {
        auto p = side->r.approx(i, m);
        if (p.starved()) return Verdict<std::optional<Q>>::pending();
        if (p.ended())
          side->r_ended = true;
        else
          side->last = *p;
      }
    }
    if (!sa->last || !sb->last) return Verdict<std::optional<Q>>::pending();
    const Q& av = *sa->last;
    const Q& bv = *sb->last;
    if (!in_union(sa->discovered, av) || !in_union(sb->discovered, bv))
      return Verdict<std::optional<Q>>::of(std::nullopt);
    Q h = Q(coverage_reach(sa->discovered, av) - av);
    Q k = Q(coverage_reach(sb->discovered, bv) - bv);
    return Verdict<std::optional<Q>>::of(std::optional<Q>(Q(2 * q_min(h, k))));
  };
  return s;
}

Cover painter_anchored(MemoStream<Q> anchors, const WeightFamily& h, bool doubling) {
  struct State {
    MemoStream<Q> anchors;
    WeightFamily h;
    bool doubling = false;
    std::vector<Interval> emitted;
    std::vector<std::pair<Q, Q>> painted;  // sorted, disjoint, half-open
    std::vector<MemoStream<Q>> streams;
    std::vector<Q> anchor;
    std::vector<Q> funded;
    std::vector<bool> h_done;
    std::optional<std::uint64_t> painter_count;
    std::uint64_t diag = 0;
    std::uint64_t row = 0;
  };
  auto st = std::make_shared<State>();
  st->anchors = std::move(anchors);
  st->h = h;
  st->doubling = doubling;

  auto paint = [st](const Q& from, Q amount) {
    Q pos = from;
    while (amount > 0) {
      // hop over painted ground to the start of the next gap
      bool hopped = true;
      while (hopped) {
        hopped = false;
        for (const auto& seg : st->painted)
          if (seg.first <= pos && pos < seg.second) {
            pos = seg.second;
            hopped = true;
          }
      }
      std::optional<Q> gap_end;
      for (const auto& seg : st->painted)
        if (seg.first > pos && (!gap_end || seg.first < *gap_end)) gap_end = seg.first;
      Q piece = amount;
      if (gap_end && *gap_end - pos < piece) piece = *gap_end - pos;
      st->emitted.push_back(halfopen_iv(pos, Q(pos + piece)));
      st->painted.emplace_back(pos, Q(pos + piece));
      std::sort(st->painted.begin(), st->painted.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      std::vector<std::pair<Q, Q>> merged;
      for (const auto& seg : st->painted) {
        if (!merged.empty() && merged.back().second >= seg.first) {
          if (seg.second > merged.back().second) merged.back().second = seg.second;
        } else {
          merged.push_back(seg);
        }
      }
      st->painted = std::move(merged);
      amount -= piece;
      pos += piece;
    }
  };

  MemoStream<Interval> out([st, paint](std::uint64_t n, FuelMeter& m,
                                       const MemoStream<Interval>&) -> Pull<Interval> {
    while (st->emitted.size() <= n) {
      if (st->painter_count) {
        bool all_done = true;
        for (std::uint64_t i = 0; i < *st->painter_count; ++i)
          if (i >= st->h_done.size() || !st->h_done[i]) {
            all_done = false;
            break;
          }
        if (all_done) return Pull<Interval>::end();
      }
      const std::uint64_t i = st->row;
      const std::uint64_t stage = st->diag - st->row;
      bool skip = st->painter_count && i >= *st->painter_count;
      if (!skip && i >= st->anchor.size()) {
        auto p = st->anchors.at(i, m);
        if (p.starved()) return Pull<Interval>::starve();
        if (p.ended()) {
          st->painter_count = i;
          skip = true;
        } else {
          st->anchor.push_back(*p);
        }
      }
      if (!skip) {
        if (st->streams.size() <= i) {
          st->streams.resize(i + 1);
          st->funded.resize(i + 1, Q(0));
          st->h_done.resize(i + 1, false);
        }
        if (!st->streams[i].valid()) st->streams[i] = st->h(i);
        if (!st->h_done[i]) {
          auto p = st->streams[i].at(stage, m);
          if (p.starved()) return Pull<Interval>::starve();
          if (p.ended()) {
            st->h_done[i] = true;
          } else {
            Q v = st->doubling ? Q(2 * *p) : Q(*p);
            if (v < 0) throw DomainError("negative paint allowance " + q_str(v));
            if (v < st->funded[i])
              throw DomainError("paint allowance decreased from " +
                                q_str(st->funded[i]) + " to " + q_str(v));
            Q delta = v - st->funded[i];
            st->funded[i] = v;
            if (delta > 0) paint(st->anchor[i], delta);
          }
        }
      }
      if (st->row == st->diag) {
        st->diag += 1;
        st->row = 0;
      } else {
        st->row += 1;
      }
    }
    return Pull<Interval>::some(st->emitted[n]);
  });
  return cover_from_stream(std::move(out));
}

Cover painter(const LscReal& a, const WeightFamily& h, bool doubling) {
  LscReal sa = a.as_sequence();
  MemoStream<Q> anchors([sa](std::uint64_t i, FuelMeter& m,
                             const MemoStream<Q>&) -> Pull<Q> {
    return sa.term(i, m);
  });
  return painter_anchored(std::move(anchors), h, doubling);
}

bool IndexSet::contains(std::uint64_t i) const {
  if (cofinite_from && i >= *cofinite_from) return true;
  return std::find(listed.begin(), listed.end(), i) != listed.end();
}

IndexSet IndexSet::parse(const std::string& text) {
  IndexSet s;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = tok.find_last_not_of(" \t");
    tok = tok.substr(b, e - b + 1);
    try {
      if (tok.back() == '-') {
        std::uint64_t n = std::stoull(tok.substr(0, tok.size() - 1));
        s.cofinite_from = s.cofinite_from ? std::min(*s.cofinite_from, n) : n;
      } else {
        s.listed.push_back(std::stoull(tok));
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad index token '" + tok + "'");
    }
  }
  return s;
}

Cover wset_check(const LscReal& d, const IndexSet& W, const Q& epsilon) {
  if (d.kind() != LscReal::Kind::series)
    throw DomainError("term selection reads a series presentation");
  if (epsilon <= 0) throw DomainError("allowance must be positive");
  LscReal dc = d;
  MemoStream<Q> anchors([dc](std::uint64_t i, FuelMeter& m,
                             const MemoStream<Q>&) -> Pull<Q> {
    auto t = dc.term(i, m);  // an anchor exists only where a term does
    if (!t.ok()) return Pull<Q>::carry(t);
    if (i == 0) return Pull<Q>::some(Q(0));
    auto p = dc.approx(i - 1, m);
    if (!p.ok()) return Pull<Q>::carry(p);
    return Pull<Q>::some(*p);
  });
  auto selected_total = std::make_shared<Q>(0);
  IndexSet Wc = W;
  Q eps = epsilon;
  WeightFamily h = [dc, Wc, eps, selected_total](std::uint64_t i) {
    return MemoStream<Q>([dc, Wc, eps, selected_total, i](
                             std::uint64_t stage, FuelMeter& m,
                             const MemoStream<Q>&) -> Pull<Q> {
      if (stage > 0) return Pull<Q>::end();
      auto t = dc.term(i, m);
      if (!t.ok()) return Pull<Q>::carry(t);
      if (!Wc.contains(i)) return Pull<Q>::some(Q(0));
      *selected_total += *t;
      if (*selected_total >= eps)
        throw WeightOverflow("selected terms reach " + q_str(*selected_total) +
                             ", allowance " + q_str(eps));
      return Pull<Q>::some(*t);
    });
  };
  Cover c = painter_anchored(std::move(anchors), h, true);
  c.length_budget = Q(2 * eps);
  return c;
}

std::vector<std::uint64_t> wset_from_cover(const LscReal& d, const Cover& c,
                                           Fuel fuel) {
  if (d.kind() != LscReal::Kind::series)
    throw DomainError("term selection reads a series presentation");
  FuelMeter m(fuel);
  auto prefix = cover_prefix(c, m);
  std::vector<std::uint64_t> out;
  Q before = 0;
  for (std::uint64_t i = 0;; ++i) {
    auto t = d.term(i, m);
    if (!t.ok()) break;
    if (*t >= 0) {
      Interval needle = closed_iv(before, Q(before + *t));
      if (contained_in_one(prefix.items, needle)) out.push_back(i);
    }
    before += *t;
  }
  return out;
}

}  // namespace semireal
