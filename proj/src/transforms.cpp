#include "semireal/transforms.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semireal/errors.hpp"
#include "semireal/interval.hpp"
#include "semireal/machine.hpp"

namespace semireal {

namespace {

// Terms of a series presentation that provably ends, validated non-negative.
std::vector<Q> finite_terms(const LscReal& x, const char* who) {
  if (x.kind() != LscReal::Kind::series)
    throw DomainError(std::string(who) + " must be a series presentation");
  FuelMeter m(Fuel{1u << 16});
  std::vector<Q> out;
  for (std::uint64_t i = 0;; ++i) {
    auto p = x.term(i, m);
    if (p.ended()) break;
    if (p.starved())
      throw DomainError(std::string(who) + " must provably end; it did not");
    if (*p < 0)
      throw DomainError(std::string(who) + " has negative term " + q_str(*p));
    out.push_back(*p);
  }
  return out;
}

void check_support_order(const std::vector<std::uint64_t>& js, std::uint64_t i) {
  for (std::size_t k = 0; k + 1 < js.size(); ++k)
    if (js[k] >= js[k + 1])
      throw RowNotFinite("row " + std::to_string(i) + " support not strictly sorted");
}

}  // namespace

LscReal regroup(const DoubleSeries& d) {
  DoubleSeries dc = d;
  return LscReal::series_rule([dc](std::uint64_t i) -> Q { return row_sum(dc, i); });
}

Allocation allocate_mtilde(const DoubleSeries& d, const Semimeasure& m, const Q& c) {
  if (c <= 0) throw DomainError("allocation factor must be positive, got " + q_str(c));
  DoubleSeries dc = d;
  Semimeasure mc = m;
  Q cc = c;
  // one budget stream per row, shared by all of the row's cells so that a
  // cell's stage s always reads the same revealed budget
  auto rows = std::make_shared<std::map<std::uint64_t, MemoStream<Q>>>();
  Allocation out;
  out.c = cc;
  out.mtilde = [dc, mc, cc, rows](std::uint64_t i, std::uint64_t j) {
    auto it = rows->find(i);
    if (it == rows->end()) it = rows->emplace(i, mc.weight(i)).first;
    MemoStream<Q> budget = it->second;
    return MemoStream<Q>([dc, cc, budget, i, j](std::uint64_t s, FuelMeter& meter,
                                                const MemoStream<Q>&) -> Pull<Q> {
      auto b = budget.at(s, meter);
      if (!b.ok()) return Pull<Q>::carry(b);
      if (*b < 0) throw DomainError("negative row budget " + q_str(*b));
      auto js = dc.row_support(i);
      check_support_order(js, i);
      Q left = *b;
      for (std::uint64_t jj : js) {
        Q t = dc.term(i, jj);
        if (t < 0)
          throw DomainError("negative term at (" + std::to_string(i) + "," +
                            std::to_string(jj) + ")");
        Q take = q_min(Q(cc * t), left);
        if (jj == j) return Pull<Q>::some(take);
        left -= take;
      }
      return Pull<Q>::some(Q(0));  // outside the declared support
    });
  };
  return out;
}

Semimeasure combine_allocations(const DoubleSeries& d, const Semimeasure& m,
                                unsigned levels) {
  if (levels == 0) throw DomainError("need at least one allocation level");
  auto allocs = std::make_shared<std::vector<Allocation>>();
  for (unsigned n = 1; n <= levels; ++n)
    allocs->push_back(allocate_mtilde(d, m, q_pow2(2 * static_cast<long>(n))));
  Semimeasure out;
  out.declared_total = Q((Q(1) - q_pow2(-static_cast<long>(levels))) * m.declared_total);
  out.weight = [allocs](std::uint64_t p) {
    auto [i, j] = unpair_index(p);
    auto cells = std::make_shared<std::vector<MemoStream<Q>>>();
    for (auto& a : *allocs) cells->push_back(a.mtilde(i, j));
    return MemoStream<Q>([cells](std::uint64_t s, FuelMeter& meter,
                                 const MemoStream<Q>&) -> Pull<Q> {
      Q total = 0;
      long n = 1;
      for (auto& cell : *cells) {
        auto v = cell.at(s, meter);
        if (!v.ok()) return Pull<Q>::carry(v);
        total += q_pow2(-n) * *v;
        n += 1;
      }
      return Pull<Q>::some(total);
    });
  };
  return out;
}

LscReal mesh_refine(const LscReal& a, const LscReal& b, const Q& common_sum) {
  auto ta = finite_terms(a, "first series");
  auto tb = finite_terms(b, "second series");
  Q sa = 0;
  for (const Q& t : ta) sa += t;
  Q sb = 0;
  for (const Q& t : tb) sb += t;
  if (sa != common_sum)
    throw SumMismatch("first series sums to " + q_str(sa) + ", expected " +
                      q_str(common_sum));
  if (sb != common_sum)
    throw SumMismatch("second series sums to " + q_str(sb) + ", expected " +
                      q_str(common_sum));
  std::vector<Q> points;
  Q acc = 0;
  for (const Q& t : ta) {
    acc += t;
    points.push_back(acc);
  }
  acc = 0;
  for (const Q& t : tb) {
    acc += t;
    points.push_back(acc);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<Q> mesh;
  Q prev = 0;
  for (const Q& p : points) {
    if (p == prev) continue;  // zero-length segments vanish
    mesh.push_back(Q(p - prev));
    prev = p;
  }
  return LscReal::series_literal(std::move(mesh));
}

LscReal split_to_nonincreasing(const LscReal& a) {
  auto terms = finite_terms(a, "series");
  std::vector<Q> out;
  for (const Q& t : terms) {
    if (t == 0) continue;
    if (out.empty() || t <= out.back()) {
      out.push_back(t);
      continue;
    }
    Q ratio = Q(t / out.back());
    mpz_class pieces = ratio.get_num() / ratio.get_den();
    if (pieces * ratio.get_den() != ratio.get_num()) pieces += 1;
    Q piece = Q(t / Q(pieces));
    for (mpz_class k = 0; k < pieces; ++k) out.push_back(piece);
  }
  return LscReal::series_literal(std::move(out));
}

Semimeasure cover_to_semimeasure(const LscReal& r, const Cover& cov, unsigned n) {
  if (r.kind() != LscReal::Kind::series)
    throw DomainError("term windows need a series presentation");
  if (!cov.length_budget)
    throw DomainError("cover must declare a length budget");
  Q cap = q_pow2(-2 * static_cast<long>(n));
  if (*cov.length_budget > cap)
    throw DomainError("budget " + q_str(*cov.length_budget) + " exceeds the " +
                      q_str(cap) + " this boost level allows");
  LscReal rc = r;
  Cover cc = cov;
  Q boost = q_pow2(static_cast<long>(n));
  Semimeasure out;
  out.declared_total = q_pow2(-static_cast<long>(n));
  out.weight = [rc, cc, boost](std::uint64_t i) {
    auto confirmed_at = std::make_shared<std::optional<std::uint64_t>>();
    return MemoStream<Q>([rc, cc, boost, i, confirmed_at](
                             std::uint64_t s, FuelMeter& meter,
                             const MemoStream<Q>&) -> Pull<Q> {
      if (*confirmed_at && s > **confirmed_at) return Pull<Q>::end();
      auto t = rc.term(i, meter);
      if (!t.ok()) return Pull<Q>::carry(t);
      if (*t < 0) throw DomainError("negative term " + q_str(*t));
      Q before = 0;
      if (i > 0) {
        auto p = rc.approx(i - 1, meter);
        if (!p.ok()) return Pull<Q>::carry(p);
        before = *p;
      }
      auto prefix = cover_prefix(cc, meter, s + 1);
      Interval window = closed_iv(before, Q(before + *t));
      if (contained_in_one(prefix.items, window)) {
        *confirmed_at = s;
        return Pull<Q>::some(Q(boost * *t));
      }
      // the full enumeration is out and never trapped the window
      if (prefix.ended) return Pull<Q>::end();
      if (prefix.items.size() < s + 1) return Pull<Q>::starve();
      return Pull<Q>::some(Q(0));
    });
  };
  return out;
}

DoubleSeries load_double_series(const std::string& text) {
  auto cells =
      std::make_shared<std::map<std::pair<std::uint64_t, std::uint64_t>, Q>>();
  auto support =
      std::make_shared<std::map<std::uint64_t, std::vector<std::uint64_t>>>();
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ln += 1;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string si, sj, sq;
    if (!(ls >> si)) continue;
    if (!(ls >> sj >> sq))
      throw ParseError("line " + std::to_string(ln) + ": want `i j num/den`");
    std::string extra;
    if (ls >> extra)
      throw ParseError("line " + std::to_string(ln) + ": trailing '" + extra + "'");
    std::uint64_t i = 0, j = 0;
    try {
      i = std::stoull(si);
      j = std::stoull(sj);
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(ln) + ": bad cell index");
    }
    Q v = q_parse(sq);
    if (v < 0)
      throw DomainError("line " + std::to_string(ln) + ": negative value " + q_str(v));
    if (!cells->emplace(std::make_pair(i, j), v).second)
      throw ParseError("line " + std::to_string(ln) + ": duplicate cell");
    if (v != 0) (*support)[i].push_back(j);
  }
  for (auto& [i, js] : *support) {
    (void)i;
    std::sort(js.begin(), js.end());
  }
  DoubleSeries d;
  d.term = [cells](std::uint64_t i, std::uint64_t j) -> Q {
    auto it = cells->find({i, j});
    return it == cells->end() ? Q(0) : it->second;
  };
  d.row_support = [support](std::uint64_t i) -> std::vector<std::uint64_t> {
    auto it = support->find(i);
    return it == support->end() ? std::vector<std::uint64_t>{} : it->second;
  };
  return d;
}

DoubleSeries load_double_series_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return load_double_series(buf.str());
}

}  // namespace semireal
