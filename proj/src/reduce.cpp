#include "semireal/reduce.hpp"

#include <algorithm>

#include "semireal/errors.hpp"

namespace semireal {

ReductionWitness witness_from_sum(const LscReal& alpha, const LscReal& rho) {
  LscReal a = alpha, r = rho;
  auto phi = [a, r](const Q& s, FuelMeter& m) -> Verdict<Q> {
    std::optional<Q> av, rv;
    bool a_end = false, r_end = false;
    for (std::uint64_t n = 0;; ++n) {
      if (!a_end) {
        auto p = a.approx(n, m);
        if (p.starved()) return Verdict<Q>::pending();
        if (p.ended())
          a_end = true;
        else
          av = *p;
      }
      if (!r_end) {
        auto p = r.approx(n, m);
        if (p.starved()) return Verdict<Q>::pending();
        if (p.ended())
          r_end = true;
        else {
          if (*p < 0)
            throw DomainError("gap term approximated below zero: " + q_str(*p));
          rv = *p;
        }
      }
      if (av && rv && *av + *rv > s) return Verdict<Q>::of(*av);
      if (a_end && r_end) return Verdict<Q>::pending();  // provably stalled
    }
  };
  return ReductionWitness{std::move(phi), rho, Q(1)};
}

LscReal diff_to_lsc(const ReductionWitness& w, const LscReal& beta) {
  if (w.constant != 1)
    throw DomainError("gap recovery needs a unit-constant witness");
  ReductionWitness wc = w;
  LscReal b = beta;
  MemoStream<Q> values([wc, b](std::uint64_t n, FuelMeter& m,
                               const MemoStream<Q>&) -> Pull<Q> {
    auto p = b.approx(n, m);
    if (p.starved()) return Pull<Q>::starve();
    if (p.ended()) return Pull<Q>::end();
    auto t = wc.phi(*p, m);
    if (!t.confirmed()) return Pull<Q>::starve();
    return Pull<Q>::some(Q(*p - *t.value));
  });
  return monotone_hull(std::move(values));
}

ReductionWitness dominated_witness(const LscReal& u, const LscReal& v) {
  if (u.kind() != LscReal::Kind::series || v.kind() != LscReal::Kind::series)
    throw DomainError("domination reads two series presentations");
  LscReal uc = u, vc = v;

  auto phi = [uc, vc](const Q& s, FuelMeter& m) -> Verdict<Q> {
    Q ua = 0, va = 0;
    bool u_end = false, v_end = false;
    for (std::uint64_t n = 0;; ++n) {
      std::optional<Q> ut, vt;
      if (!u_end) {
        auto p = uc.term(n, m);
        if (p.starved()) return Verdict<Q>::pending();
        if (p.ended())
          u_end = true;
        else
          ut = *p;
      }
      if (!v_end) {
        auto p = vc.term(n, m);
        if (p.starved()) return Verdict<Q>::pending();
        if (p.ended())
          v_end = true;
        else
          vt = *p;
      }
      if (n > 0) {
        const Q uval = ut ? *ut : Q(0), vval = vt ? *vt : Q(0);
        if (uval > vval) throw DominationViolated(n);
      }
      if (ut) ua += *ut;
      if (vt) va += *vt;
      if (va > s) return Verdict<Q>::of(ua);
      if (u_end && v_end) return Verdict<Q>::pending();  // provably stalled
    }
  };

  // the gap series, with the same lazy checks
  MemoStream<Q> gap([uc, vc](std::uint64_t i, FuelMeter& m,
                             const MemoStream<Q>&) -> Pull<Q> {
    auto pu = uc.term(i, m);
    if (pu.starved()) return Pull<Q>::starve();
    auto pv = vc.term(i, m);
    if (pv.starved()) return Pull<Q>::starve();
    const Q uval = pu.ended() ? Q(0) : *pu;
    const Q vval = pv.ended() ? Q(0) : *pv;
    if (pu.ended() && pv.ended()) return Pull<Q>::end();
    if (i > 0 && uval > vval) throw DominationViolated(i);
    return Pull<Q>::some(Q(vval - uval));
  });
  return ReductionWitness{std::move(phi), LscReal::series_from(std::move(gap)), Q(1)};
}

ReductionWitness compose_witness(const ReductionWitness& outer,
                                 const ReductionWitness& inner) {
  if (outer.constant <= 0 || inner.constant <= 0)
    throw DomainError("witness constants must be positive");
  ReductionWitness o = outer, in = inner;
  Q c1 = outer.constant;
  auto phi = [o, in, c1](const Q& r, FuelMeter& m) -> Verdict<Q> {
    auto mid = in.phi(Q(r / c1), m);
    if (!mid.confirmed()) return Verdict<Q>::pending();
    return o.phi(Q(c1 * *mid.value), m);
  };
  LscReal rho = sum(scale(inner.rho, c1), outer.rho);
  return ReductionWitness{std::move(phi), std::move(rho),
                          Q(outer.constant * inner.constant)};
}

LscReal split_along(const LscReal& v, const ReductionWitness& w,
                    std::shared_ptr<std::vector<int>> case_log) {
  if (v.kind() != LscReal::Kind::series)
    throw DomainError("splitting reads a series presentation");
  if (w.constant != 1)
    throw InvariantBroken("splitting needs a unit-constant witness");
  LscReal vc = v;
  ReductionWitness wc = w;
  MemoStream<Q> terms([vc, wc, case_log](std::uint64_t i, FuelMeter& m,
                                         const MemoStream<Q>& self) -> Pull<Q> {
    auto pv = vc.term(i, m);
    if (pv.starved()) return Pull<Q>::starve();
    if (pv.ended()) return Pull<Q>::end();
    auto ps = vc.approx(i, m);  // partial sum through v_i
    if (!ps.ok()) return Pull<Q>::starve();
    auto pa = wc.phi(*ps, m);
    if (!pa.confirmed()) return Pull<Q>::starve();
    const Q aprime = *pa.value;
    Q t = 0;
    for (std::uint64_t j = 0; j < i; ++j) {
      auto pj = self.at(j, m);
      if (!pj.ok()) return Pull<Q>::starve();
      t += *pj;
    }
    Q out;
    int chosen;
    if (i == 0) {
      // no floor on the leading increment
      if (aprime <= t + *pv) {
        out = aprime - t;
        chosen = 2;
      } else {
        out = *pv;
        chosen = 3;
      }
    } else if (aprime < t) {
      out = 0;
      chosen = 1;
    } else if (aprime <= t + *pv) {
      out = aprime - t;
      chosen = 2;
    } else {
      out = *pv;
      chosen = 3;
    }
    if (case_log && case_log->size() == i) case_log->push_back(chosen);
    return Pull<Q>::some(out);
  });
  return LscReal::series_from(std::move(terms));
}

RaceOutcome race(const LscReal& alpha, const LscReal& beta, Fuel fuel) {
  FuelMeter m(fuel);
  RaceOutcome out;
  out.status = RaceOutcome::Status::ReducingSoFar;
  std::vector<Q> holes;
  auto finish_reducing = [&]() {
    out.holes = LscReal::series_literal(holes);
    return out;
  };

  LscReal aseq = alpha.as_sequence();
  auto pa = aseq.term(0, m);
  if (pa.starved()) return finish_reducing();
  if (pa.ended()) {
    out.alpha_exhausted = true;
    return finish_reducing();
  }
  Q a_prev = *pa;

  std::uint64_t b_idx = 0;
  auto pb = beta.approx(b_idx, m);
  if (pb.starved()) return finish_reducing();
  if (pb.ended()) return finish_reducing();
  Q b_cur = *pb;
  holes.push_back(Q(b_cur - a_prev));  // may be negative

  for (std::uint64_t k = 0;; ++k) {
    auto pn = aseq.term(k + 1, m);
    if (pn.starved()) return finish_reducing();
    if (pn.ended()) {
      out.alpha_exhausted = true;
      return finish_reducing();
    }
    Q len = *pn - a_prev;
    a_prev = *pn;
    Interval placed = closed_iv(b_cur, Q(b_cur + len));
    out.placed.push_back(placed);
    // wait for beta to exit on the right
    for (;;) {
      auto p = beta.approx(++b_idx, m);
      if (p.starved()) return finish_reducing();
      if (p.ended()) {
        // the limit equals the largest value seen, trapped inside the
        // placed closed interval forever; more fuel cannot change this
        out.status = RaceOutcome::Status::CoverProduced;
        std::vector<Interval> grown;
        Q budget = 0;
        for (std::size_t j = 0; j < out.placed.size(); ++j) {
          Q h = q_pow2(-static_cast<long>(j) - 11);
          grown.push_back(open_iv(Q(out.placed[j].left - h),
                                  Q(out.placed[j].right + h)));
          budget += grown.back().length();
        }
        out.cover = cover_literal(std::move(grown), budget);
        out.holes = LscReal::series_literal(holes);
        return out;
      }
      if (*p > placed.right) {
        holes.push_back(Q(*p - placed.right));
        b_cur = *p;
        break;
      }
    }
  }
}

WeightedComplete weighted_complete(std::vector<LscReal> reals, std::vector<Q> weights) {
  if (reals.empty() || reals.size() != weights.size())
    throw DomainError("need equally many reals and weights, at least one");
  Q wsum = 0;
  for (const Q& w : weights) {
    if (w <= 0) throw DomainError("weights must be positive");
    wsum += w;
  }
  if (wsum > 1) throw DomainError("weights sum to " + q_str(wsum) + " > 1");
  Q supsum = 0;
  for (const LscReal& r : reals) {
    if (!r.known_sup() || *r.known_sup() > 1)
      throw DomainError("every combined real must declare an upper bound <= 1");
  }
  for (std::size_t i = 0; i < reals.size(); ++i)
    supsum += weights[i] * *reals[i].known_sup();

  std::vector<LscReal> parts = reals;
  std::vector<Q> ws = weights;
  MemoStream<Q> stages([parts, ws](std::uint64_t n, FuelMeter& m,
                                   const MemoStream<Q>&) -> Pull<Q> {
    Q total = 0;
    bool all_ended = true;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      // carry the attained value forward once a part is exhausted
      std::optional<Q> last;
      for (std::uint64_t k = 0; k <= n; ++k) {
        auto p = parts[i].approx(k, m);
        if (p.starved()) return Pull<Q>::starve();
        if (p.ended()) break;
        last = *p;
        if (k == n) all_ended = false;
      }
      if (last) {
        if (*last < 0) throw DomainError("combined reals must stay non-negative");
        total += ws[i] * *last;
      }
    }
    if (all_ended && n > 0) return Pull<Q>::end();
    return Pull<Q>::some(total);
  });

  WeightedComplete out{monotone_hull(std::move(stages), supsum), std::move(parts),
                       std::move(ws)};
  return out;
}

ReductionWitness WeightedComplete::witness_for(std::size_t i) const {
  if (i >= parts.size()) throw DomainError("no such part");
  std::optional<LscReal> rest;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (j == i) continue;
    LscReal piece = scale(parts[j], Q(weights[j] / weights[i]));
    rest = rest ? sum(*rest, piece) : piece;
  }
  LscReal rho = rest ? *rest : LscReal::series_literal({Q(0)});
  ReductionWitness w = witness_from_sum(parts[i], rho);
  w.constant = Q(1) / weights[i];
  return w;
}

Semimeasure omega_with_sum(const Semimeasure& m, const LscReal& alpha,
                           const ReductionWitness& w) {
  if (w.constant <= 0) throw DomainError("witness constant must be positive");
  const Q c = w.constant;
  ReductionWitness unit{w.phi, w.rho, Q(1)};
  LscReal tau = scale(diff_to_lsc(unit, scale(alpha, c)), Q(1) / c);

  Semimeasure base = m;
  LscReal tau_c = tau;
  Q declared = alpha.known_sup() ? q_min(*alpha.known_sup(), Q(1)) : Q(1);
  return Semimeasure{
      [base, tau_c, c](std::uint64_t i) {
        MemoStream<Q> src = base.weight(i);
        if (i != 0) {
          return MemoStream<Q>([src, c](std::uint64_t n, FuelMeter& meter,
                                        const MemoStream<Q>&) -> Pull<Q> {
            auto p = src.at(n, meter);
            if (!p.ok()) return p;
            return Pull<Q>::some(Q(*p / c));
          });
        }
        return MemoStream<Q>([src, tau_c, c](std::uint64_t n, FuelMeter& meter,
                                             const MemoStream<Q>&) -> Pull<Q> {
          std::optional<Q> mv, tv;
          bool m_end = false, t_end = false;
          for (std::uint64_t k = 0; k <= n; ++k) {
            if (!m_end) {
              auto p = src.at(k, meter);
              if (p.starved()) return Pull<Q>::starve();
              if (p.ended())
                m_end = true;
              else
                mv = *p;
            }
            if (!t_end) {
              auto p = tau_c.approx(k, meter);
              if (p.starved()) return Pull<Q>::starve();
              if (p.ended())
                t_end = true;
              else
                tv = *p;
            }
            if (m_end && t_end && k < n) return Pull<Q>::end();
          }
          Q val = mv ? Q(*mv / c) : Q(0);
          if (tv && *tv > 0) val += *tv;
          return Pull<Q>::some(val);
        });
      },
      declared};
}

}  // namespace semireal
