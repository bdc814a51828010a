#include "semireal/lsc_real.hpp"

#include <fstream>
#include <sstream>

#include "semireal/errors.hpp"

namespace semireal {

namespace {

// Wraps raw sequence terms with the strict-increase check. The check pulls
// the previous validated term, so a violation surfaces at the first queried
// index that breaks order.
MemoStream<Q> validated_sequence(MemoStream<Q> raw) {
  return MemoStream<Q>([raw](std::uint64_t i, FuelMeter& m,
                             const MemoStream<Q>& self) -> Pull<Q> {
    Pull<Q> cur = raw.at(i, m);
    if (!cur.ok()) return cur;
    if (i > 0) {
      Pull<Q> prev = self.at(i - 1, m);
      if (!prev.ok()) return Pull<Q>::carry(prev);
      if (!(*prev < *cur))
        throw DomainError("sequence not increasing at index " + std::to_string(i));
    }
    return cur;
  });
}

MemoStream<Q> validated_series(MemoStream<Q> raw) {
  return MemoStream<Q>([raw](std::uint64_t i, FuelMeter& m,
                             const MemoStream<Q>&) -> Pull<Q> {
    Pull<Q> cur = raw.at(i, m);
    if (cur.ok() && i > 0 && *cur < 0)
      throw DomainError("negative series term at index " + std::to_string(i));
    return cur;
  });
}

MemoStream<Q> partial_sums(MemoStream<Q> terms) {
  return MemoStream<Q>([terms](std::uint64_t i, FuelMeter& m,
                               const MemoStream<Q>& self) -> Pull<Q> {
    Pull<Q> cur = terms.at(i, m);
    if (!cur.ok()) return cur;
    if (i == 0) return cur;
    Pull<Q> prev = self.at(i - 1, m);
    if (!prev.ok()) return Pull<Q>::carry(prev);
    return Pull<Q>::some(*prev + *cur);
  });
}

MemoStream<Q> running_max(MemoStream<Q> terms) {
  return MemoStream<Q>([terms](std::uint64_t i, FuelMeter& m,
                               const MemoStream<Q>& self) -> Pull<Q> {
    Pull<Q> cur = terms.at(i, m);
    if (!cur.ok()) return cur;
    if (i == 0) return cur;
    Pull<Q> prev = self.at(i - 1, m);
    if (!prev.ok()) return Pull<Q>::carry(prev);
    return Pull<Q>::some(q_max(*prev, *cur));
  });
}

MemoStream<Q> project_values(MemoStream<std::pair<std::uint64_t, Q>> pairs) {
  return MemoStream<Q>([pairs](std::uint64_t i, FuelMeter& m,
                               const MemoStream<Q>&) -> Pull<Q> {
    auto p = pairs.at(i, m);
    if (!p.ok()) return Pull<Q>::carry(p);
    return Pull<Q>::some(p.value->second);
  });
}

}  // namespace

MemoStream<std::pair<std::uint64_t, Q>> strictify(MemoStream<Q> weak) {
  using P = std::pair<std::uint64_t, Q>;
  return MemoStream<P>([weak](std::uint64_t i, FuelMeter& m,
                              const MemoStream<P>& self) -> Pull<P> {
    std::uint64_t from = 0;
    std::optional<Q> floor;
    if (i > 0) {
      Pull<P> prev = self.at(i - 1, m);
      if (!prev.ok()) return Pull<P>::carry(prev);
      from = prev.value->first + 1;
      floor = prev.value->second;
    }
    for (std::uint64_t j = from;; ++j) {
      Pull<Q> v = weak.at(j, m);
      if (!v.ok()) return Pull<P>::carry(v);
      if (!floor || *v > *floor) return Pull<P>::some({j, *v});
    }
  });
}

LscReal LscReal::with_known_sup(Q sup) const {
  LscReal out = *this;
  out.sup_ = std::move(sup);
  return out;
}

Pull<Q> LscReal::term(std::uint64_t i, FuelMeter& m) const {
  Pull<Q> r = terms_.at(i, m);
  if (r.ok() && sup_ && kind_ != Kind::series && *r > *sup_)
    throw LimitInconsistent("term " + q_str(*r.value) + " above declared sup " +
                            q_str(*sup_));
  return r;
}

Pull<Q> LscReal::approx(std::uint64_t i, FuelMeter& m) const {
  Pull<Q> r = approx_.at(i, m);
  if (r.ok() && sup_ && *r > *sup_)
    throw LimitInconsistent("approximation " + q_str(*r.value) +
                            " above declared sup " + q_str(*sup_));
  return r;
}

LscReal LscReal::as_sequence() const {
  switch (kind_) {
    case Kind::sequence:
      return *this;
    case Kind::series:
      return sequence_from(project_values(strictify(approx_)), sup_);
    case Kind::leftcut:
      return sequence_from(project_values(strictify(approx_)), sup_);
  }
  throw DomainError("bad kind");
}

LscReal LscReal::sequence_from(MemoStream<Q> terms, std::optional<Q> sup) {
  MemoStream<Q> checked = validated_sequence(std::move(terms));
  return LscReal(Kind::sequence, checked, checked, std::move(sup));
}

LscReal LscReal::series_from(MemoStream<Q> terms, std::optional<Q> sup) {
  MemoStream<Q> checked = validated_series(std::move(terms));
  return LscReal(Kind::series, checked, partial_sums(checked), std::move(sup));
}

LscReal LscReal::leftcut_from(MemoStream<Q> terms, std::optional<Q> sup) {
  return LscReal(Kind::leftcut, terms, running_max(terms), std::move(sup));
}

LscReal LscReal::sequence_literal(std::vector<Q> terms, std::optional<Q> sup) {
  return sequence_from(stream_from_vector(std::move(terms)), std::move(sup));
}

LscReal LscReal::series_literal(std::vector<Q> terms, std::optional<Q> sup) {
  return series_from(stream_from_vector(std::move(terms)), std::move(sup));
}

LscReal LscReal::leftcut_literal(std::vector<Q> terms, std::optional<Q> sup) {
  return leftcut_from(stream_from_vector(std::move(terms)), std::move(sup));
}

LscReal LscReal::sequence_rule(std::function<Q(std::uint64_t)> rule,
                               std::optional<Q> sup) {
  return sequence_from(stream_from_rule<Q>(std::move(rule)), std::move(sup));
}

LscReal LscReal::series_rule(std::function<Q(std::uint64_t)> rule,
                             std::optional<Q> sup) {
  return series_from(stream_from_rule<Q>(std::move(rule)), std::move(sup));
}

MemoStream<std::pair<std::uint64_t, Q>> strict_partial_sums(const LscReal& s) {
  if (s.kind() != LscReal::Kind::series)
    throw DomainError("strict_partial_sums expects a series presentation");
  // Rebuild the weak partial-sum view through the public interface so the
  // series validation stays attached.
  LscReal copy = s;
  return strictify(MemoStream<Q>(
      [copy](std::uint64_t i, FuelMeter& m, const MemoStream<Q>&) {
        return copy.approx(i, m);
      }));
}

LscReal seq_from_series(const LscReal& s) {
  if (s.kind() != LscReal::Kind::series)
    throw DomainError("seq_from_series expects a series presentation");
  return s.as_sequence();
}

LscReal series_from_seq(const LscReal& a) {
  if (a.kind() != LscReal::Kind::sequence)
    throw DomainError("series_from_seq expects a sequence presentation");
  LscReal copy = a;
  return LscReal::series_from(
      MemoStream<Q>([copy](std::uint64_t i, FuelMeter& m,
                           const MemoStream<Q>&) -> Pull<Q> {
        Pull<Q> cur = copy.term(i, m);
        if (!cur.ok()) return cur;
        if (i == 0) return cur;
        Pull<Q> prev = copy.term(i - 1, m);
        if (!prev.ok()) return Pull<Q>::carry(prev);
        return Pull<Q>::some(*cur - *prev);
      }),
      a.known_sup());
}

std::set<Q> leftcut(const LscReal& a, Fuel fuel) {
  FuelMeter m(fuel);
  std::set<Q> out;
  for (std::uint64_t d = 0;; ++d) {
    for (std::uint64_t i = 0; i <= d; ++i) {
      const std::uint64_t k = d - i;
      Pull<Q> v = a.approx(i, m);
      if (v.starved()) return out;
      if (v.ended()) continue;
      out.insert(*v - q_pow2(-static_cast<long>(k)));
    }
  }
}

LscReal monotone_hull(MemoStream<Q> values, std::optional<Q> sup) {
  return LscReal::leftcut_from(std::move(values), std::move(sup)).as_sequence();
}

LscReal sum(const LscReal& a, const LscReal& b) {
  LscReal sa = a.as_sequence(), sb = b.as_sequence();
  std::optional<Q> sup;
  if (sa.known_sup() && sb.known_sup()) sup = *sa.known_sup() + *sb.known_sup();
  return LscReal::sequence_from(
      MemoStream<Q>([sa, sb](std::uint64_t i, FuelMeter& m,
                             const MemoStream<Q>&) -> Pull<Q> {
        Pull<Q> x = sa.term(i, m);
        if (!x.ok()) return x;
        Pull<Q> y = sb.term(i, m);
        if (!y.ok()) return y;
        return Pull<Q>::some(*x + *y);
      }),
      std::move(sup));
}

LscReal scale(const LscReal& a, const Q& c) {
  if (c <= 0) throw DomainError("scale factor must be positive, got " + q_str(c));
  LscReal sa = a.as_sequence();
  std::optional<Q> sup;
  if (sa.known_sup()) sup = c * *sa.known_sup();
  return LscReal::sequence_from(
      MemoStream<Q>([sa, c](std::uint64_t i, FuelMeter& m,
                            const MemoStream<Q>&) -> Pull<Q> {
        Pull<Q> x = sa.term(i, m);
        if (!x.ok()) return x;
        return Pull<Q>::some(c * *x);
      }),
      std::move(sup));
}

Pull<Q> attained_value(const LscReal& x, FuelMeter& m) {
  std::optional<Q> last;
  for (std::uint64_t i = 0;; ++i) {
    Pull<Q> v = x.approx(i, m);
    if (v.ok()) {
      last = *v;
      continue;
    }
    if (v.ended() && last) return Pull<Q>::some(*last);
    return Pull<Q>::carry(v);
  }
}

LscReal load_lsc(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<LscReal::Kind> kind;
  std::vector<Q> terms;
  std::uint64_t expect = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!kind) {
      if (tok != "kind") throw ParseError("line " + std::to_string(lineno) +
                                          ": expected 'kind sequence|series'");
      std::string k;
      if (!(ls >> k)) throw ParseError("missing kind");
      if (k == "sequence") kind = LscReal::Kind::sequence;
      else if (k == "series") kind = LscReal::Kind::series;
      else throw ParseError("unknown kind '" + k + "'");
      continue;
    }
    std::uint64_t idx;
    try {
      idx = std::stoull(tok);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad index '" + tok + "'");
    }
    if (idx != expect)
      throw ParseError("line " + std::to_string(lineno) + ": index " +
                       std::to_string(idx) + ", expected " + std::to_string(expect));
    std::string qs;
    if (!(ls >> qs)) throw ParseError("line " + std::to_string(lineno) + ": missing value");
    Q v = q_parse(qs);
    if (kind == LscReal::Kind::sequence && !terms.empty()) {
      if (v == terms.back()) { ++expect; continue; }  // flat step: remap away
      if (v < terms.back())
        throw ParseError("line " + std::to_string(lineno) + ": sequence decreases");
    }
    terms.push_back(std::move(v));
    ++expect;
  }
  if (!kind) throw ParseError("missing 'kind' header");
  if (terms.empty()) throw ParseError("no terms");
  return *kind == LscReal::Kind::sequence ? LscReal::sequence_literal(terms)
                                          : LscReal::series_literal(terms);
}

LscReal load_lsc_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return load_lsc(buf.str());
}

std::string save_lsc(const LscReal& x, std::uint64_t max_terms, Fuel fuel) {
  const LscReal::Kind k = x.kind();
  if (k == LscReal::Kind::leftcut)
    throw DomainError("leftcut presentations have no literal text form");
  std::ostringstream out;
  out << "kind " << (k == LscReal::Kind::sequence ? "sequence" : "series") << "\n";
  FuelMeter m(fuel);
  for (std::uint64_t i = 0; i < max_terms; ++i) {
    Pull<Q> v = x.term(i, m);
    if (!v.ok()) break;
    out << i << " " << q_str(*v) << "\n";
  }
  return out.str();
}

}  // namespace semireal
