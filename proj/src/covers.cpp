#include "semireal/covers.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "semireal/errors.hpp"

namespace semireal {

Cover cover_literal(std::vector<Interval> items, std::optional<Q> budget) {
  return Cover{stream_from_vector<Interval>(std::move(items)), std::move(budget)};
}

Cover cover_from_stream(MemoStream<Interval> items, std::optional<Q> budget) {
  return Cover{std::move(items), std::move(budget)};
}

CoverPrefix cover_prefix(const Cover& c, FuelMeter& m,
                         std::optional<std::size_t> max_items) {
  CoverPrefix out;
  Q running = 0;
  for (std::uint64_t i = 0;; ++i) {
    if (max_items && out.items.size() >= *max_items) return out;
    auto p = c.items.at(i, m);
    if (p.starved()) return out;
    if (p.ended()) {
      out.ended = true;
      return out;
    }
    running += (*p).length();
    if (c.length_budget && running > *c.length_budget)
      throw LengthBudgetExceeded("item " + std::to_string(i) + " pushes total to " +
                                 q_str(running) + " over " + q_str(*c.length_budget));
    out.items.push_back(*p);
  }
}

Q total_length(const Cover& c, Fuel fuel) {
  FuelMeter m(fuel);
  Q total = 0;
  for (const Interval& iv : cover_prefix(c, m).items) total += iv.length();
  return total;
}

Verdict<std::size_t> contains(const Cover& c, const LscReal& a, Fuel fuel) {
  FuelMeter m(fuel);
  auto prefix = cover_prefix(c, m);
  // exhaust the approximations within the remaining fuel
  std::optional<Q> best;
  bool attained = false;
  for (std::uint64_t n = 0;; ++n) {
    auto p = a.approx(n, m);
    if (p.starved()) break;
    if (p.ended()) {
      attained = true;  // best holds the exact limit
      break;
    }
    best = *p;
  }
  if (!best) return Verdict<std::size_t>::pending();
  for (std::size_t i = 0; i < prefix.items.size(); ++i) {
    const Interval& iv = prefix.items[i];
    if (attained) {
      if (iv.contains(*best)) return Verdict<std::size_t>::of(i);
      continue;
    }
    bool entered = iv.left_closed ? (*best >= iv.left) : (*best > iv.left);
    if (!entered) continue;
    if (!a.known_sup()) continue;
    const Q& sup = *a.known_sup();
    bool bounded = iv.right_closed ? (sup <= iv.right) : (sup < iv.right);
    if (bounded) return Verdict<std::size_t>::of(i);
  }
  return Verdict<std::size_t>::pending();
}

Cover transform_cover(const Cover& cover_beta, const ReductionWitness& w,
                      const LscReal& a, const LscReal& b) {
  (void)a;  // phi already maps into alpha's approximations
  struct State {
    Cover input;
    ReductionWitness w;
    LscReal b;
    std::vector<Interval> emitted;
    std::vector<Interval> waiting;  // sorted by left endpoint, stable
    Q in_running = 0;
    std::uint64_t in_idx = 0;
    std::uint64_t b_idx = 0;
    std::optional<Q> b_cur;
    bool in_ended = false;
    bool b_ended = false;
    bool consume_turn = true;
  };
  auto st = std::make_shared<State>(State{cover_beta, w, b, {}, {}, Q(0), 0, 0,
                                          std::nullopt, false, false, true});

  // true = emitted, false = phi starved (item stays where it was)
  auto emit_for = [st](const Interval& iv, FuelMeter& m) -> bool {
    auto v = st->w.phi(*st->b_cur, m);
    if (!v.confirmed()) return false;
    Interval out = iv;
    out.right = *v.value + iv.length();
    out.left = *v.value;
    st->emitted.push_back(out);
    return true;
  };

  // drop / emit / keep one queued interval against the current b value;
  // returns false on starvation inside phi
  auto scan_waiting = [st, emit_for](FuelMeter& m) -> bool {
    for (std::size_t k = 0; k < st->waiting.size();) {
      const Interval iv = st->waiting[k];
      if (st->b_cur && iv.contains(*st->b_cur)) {
        if (!emit_for(iv, m)) return false;
        st->waiting.erase(st->waiting.begin() + static_cast<long>(k));
        continue;
      }
      bool left_of = st->b_cur && (iv.right < *st->b_cur ||
                                   (iv.right == *st->b_cur && !iv.right_closed));
      if (left_of || st->b_ended) {
        // passed, or the exhausted limit can never enter it
        st->waiting.erase(st->waiting.begin() + static_cast<long>(k));
        continue;
      }
      ++k;
    }
    return true;
  };

  MemoStream<Interval> out([st, emit_for, scan_waiting](
                               std::uint64_t n, FuelMeter& m,
                               const MemoStream<Interval>&) -> Pull<Interval> {
    while (st->emitted.size() <= n) {
      if (st->in_ended && st->b_ended && st->waiting.empty())
        return Pull<Interval>::end();
      bool want_input = st->consume_turn && !st->in_ended;
      if (want_input) {
        if (!st->b_cur) {
          // nothing to classify against; a value-free exhausted driver
          // leaves every interval undecidable, so the output just ends
          if (st->b_ended) return Pull<Interval>::end();
          st->consume_turn = false;
          continue;
        }
        auto p = st->input.items.at(st->in_idx, m);
        if (p.starved()) return Pull<Interval>::starve();
        if (p.ended()) {
          st->in_ended = true;
          st->consume_turn = false;
          continue;
        }
        st->in_running += (*p).length();
        if (st->input.length_budget && st->in_running > *st->input.length_budget)
          throw LengthBudgetExceeded("transformation input passed its budget");
        const Interval iv = *p;
        if (iv.contains(*st->b_cur)) {
          if (!emit_for(iv, m)) return Pull<Interval>::starve();
        } else {
          bool left_of = iv.right < *st->b_cur ||
                         (iv.right == *st->b_cur && !iv.right_closed);
          if (!left_of && !st->b_ended) {
            auto pos = std::upper_bound(
                st->waiting.begin(), st->waiting.end(), iv,
                [](const Interval& x, const Interval& y) { return x.left < y.left; });
            st->waiting.insert(pos, iv);
          }
          // left-of intervals vanish: the limit sits at or above b_cur
        }
        st->in_idx += 1;
        st->consume_turn = false;
        continue;
      }
      // advance b, or finish flushing the queue once b is exhausted
      if (st->b_ended) {
        if (!scan_waiting(m)) return Pull<Interval>::starve();
        st->consume_turn = true;
        continue;
      }
      auto p = st->b.approx(st->b_idx, m);
      if (p.starved()) return Pull<Interval>::starve();
      if (p.ended()) {
        st->b_ended = true;
        if (!scan_waiting(m)) return Pull<Interval>::starve();
        st->consume_turn = true;
        continue;
      }
      if (!st->b_cur || *p > *st->b_cur) {
        st->b_cur = *p;
        if (!scan_waiting(m)) return Pull<Interval>::starve();
      }
      st->b_idx += 1;
      st->consume_turn = true;
    }
    return Pull<Interval>::some(st->emitted[n]);
  });
  return Cover{std::move(out), cover_beta.length_budget};
}

UnionBoundResult union_bound(const std::vector<Interval>& intervals,
                             const std::vector<std::pair<Q, Q>>& weights,
                             const Q& c) {
  if (c <= 0) throw DomainError("density constant must be positive");
  Q wtotal = 0;
  for (const auto& [pt, wt] : weights) {
    (void)pt;
    if (wt < 0) throw DomainError("negative weight");
    wtotal += wt;
  }
  if (wtotal > 1) throw DomainError("weights sum to " + q_str(wtotal) + " > 1");

  for (const Interval& iv : intervals) {
    Q inner = 0;
    for (const auto& [pt, wt] : weights)
      if (iv.contains(pt)) inner += wt;
    if (!(inner > c / 2 * iv.length()))
      throw DensityViolated("interval [" + q_str(iv.left) + ", " + q_str(iv.right) +
                            "] holds " + q_str(inner) + " <= (c/2)*length");
  }

  std::vector<Interval> kept = intervals;
  std::sort(kept.begin(), kept.end(), [](const Interval& x, const Interval& y) {
    if (x.left != y.left) return x.left < y.left;
    return x.right < y.right;
  });
  // drop intervals covered by the union of the rest, first-found first,
  // until stable; bounded by n passes since each pass removes one
  std::size_t guard = kept.size() + 1;
  bool removed = true;
  while (removed) {
    if (guard-- == 0) throw InvariantBroken("redundancy elimination looped");
    removed = false;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      std::vector<Interval> others;
      for (std::size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      if (contained_in_one(merge_components(others), kept[i])) {
        kept.erase(kept.begin() + static_cast<long>(i));
        removed = true;
        break;
      }
    }
  }

  for (std::size_t i = 0; i + 1 < kept.size(); ++i)
    if (kept[i + 1].right < kept[i].right)
      throw InvariantBroken("non-redundant intervals have unsorted right ends");
  for (std::size_t i = 0; i + 2 < kept.size(); ++i)
    if (kept[i].right > kept[i + 2].left)
      throw InvariantBroken("interval reaches past its second successor");

  UnionBoundResult res;
  res.bound = Q(4) / c;
  res.measure = union_measure(kept);
  if (res.measure > res.bound)
    throw InvariantBroken("union measure escapes the certified bound");
  for (std::size_t i = 0; i < kept.size(); ++i)
    (i % 2 == 0 ? res.even : res.odd).push_back(i);
  res.kept = std::move(kept);
  return res;
}

Cover u_c_cover(const Machine& M, unsigned c, Fuel fuel) {
  std::vector<Interval> items;
  std::map<std::uint64_t, std::uint64_t> best;  // output -> best length
  for (const MachineEntry& e : revealed_by(M, fuel.steps)) {
    auto it = best.find(e.output);
    if (it != best.end() && it->second <= e.program.size()) continue;
    best[e.output] = e.program.size();
    Q r = index_rational(e.output);
    Q radius = q_pow2(-static_cast<long>(e.program.size()) - static_cast<long>(c));
    items.push_back(open_iv(r - radius, r + radius));
  }
  return cover_literal(std::move(items), q_pow2(1 - static_cast<long>(c)));
}

Cover load_cover(const std::string& text) {
  std::vector<Interval> items;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string l, r, mode;
    if (!(ls >> l)) continue;
    if (!(ls >> r >> mode))
      throw ParseError("cover line " + std::to_string(lineno) +
                       ": expected left right openness");
    Interval iv;
    iv.left = q_parse(l);
    iv.right = q_parse(r);
    set_openness(iv, mode);
    if (iv.left > iv.right)
      throw ParseError("cover line " + std::to_string(lineno) + ": left > right");
    items.push_back(std::move(iv));
  }
  return cover_literal(std::move(items));
}

Cover load_cover_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cover file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_cover(buf.str());
}

std::string save_cover(const Cover& c, std::size_t max_items, Fuel fuel) {
  FuelMeter m(fuel);
  std::ostringstream out;
  for (const Interval& iv : cover_prefix(c, m, max_items).items)
    out << q_str(iv.left) << " " << q_str(iv.right) << " " << openness_str(iv) << "\n";
  return out.str();
}

}  // namespace semireal
