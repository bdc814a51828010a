#include "semireal/machine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "semireal/errors.hpp"

namespace semireal {

namespace {

// Largest e with 2^e <= x, for x > 0.
long pow2_floor_exp(const Q& x) {
  long e = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
  while (q_pow2(e) > x) --e;
  while (q_pow2(e + 1) <= x) ++e;
  return e;
}

std::map<std::uint64_t, Q> output_masses(const std::vector<MachineEntry>& entries) {
  std::map<std::uint64_t, Q> mass;
  for (const auto& e : entries)
    mass[e.output] += q_pow2(-static_cast<long>(e.program.size()));
  return mass;
}

// Shortest program length per output over the whole table.
std::map<std::uint64_t, std::uint64_t> shortest_lengths(const Machine& m) {
  std::map<std::uint64_t, std::uint64_t> best;
  for (const auto& e : m.entries) {
    auto it = best.find(e.output);
    if (it == best.end() || e.program.size() < it->second)
      best[e.output] = e.program.size();
  }
  return best;
}

}  // namespace

void validate_machine(const Machine& m) {
  std::vector<std::string> programs;
  programs.reserve(m.entries.size());
  for (const auto& e : m.entries) {
    if (e.program.empty()) throw ParseError("empty program");
    for (char c : e.program)
      if (c != '0' && c != '1')
        throw ParseError("program '" + e.program + "' has non-binary digit");
    if (e.time == 0) throw ParseError("time must be positive");
    programs.push_back(e.program);
  }
  std::sort(programs.begin(), programs.end());
  // in sorted order, any prefix pair surfaces as an adjacent pair
  for (std::size_t i = 0; i + 1 < programs.size(); ++i)
    if (programs[i + 1].compare(0, programs[i].size(), programs[i]) == 0)
      throw PrefixFreeViolation(programs[i], programs[i + 1]);
  Q k = kraft_sum(m);
  if (k > 1) throw KraftViolation(q_str(k));
}

Q kraft_sum(const Machine& m) {
  Q total = 0;
  for (const auto& e : m.entries)
    total += q_pow2(-static_cast<long>(e.program.size()));
  return total;
}

Machine load_machine(const std::string& text) {
  Machine m;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string pTok, oTok, tTok;
    if (!(ls >> pTok)) continue;  // blank
    if (!(ls >> oTok >> tTok))
      throw ParseError("machine line " + std::to_string(lineno) +
                       ": expected program/output/time");
    auto strip = [&](std::string& tok, const char* prefix) {
      std::string p(prefix);
      if (tok.compare(0, p.size(), p) != 0)
        throw ParseError("machine line " + std::to_string(lineno) +
                         ": expected '" + p + "...'");
      tok.erase(0, p.size());
    };
    strip(pTok, "program:");
    strip(oTok, "output:");
    strip(tTok, "time:");
    MachineEntry e;
    e.program = pTok;
    try {
      e.output = std::stoull(oTok);
      e.time = std::stoull(tTok);
    } catch (const std::exception&) {
      throw ParseError("machine line " + std::to_string(lineno) + ": bad integer");
    }
    m.entries.push_back(std::move(e));
  }
  validate_machine(m);
  return m;
}

Machine load_machine_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open machine file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_machine(buf.str());
}

std::vector<MachineEntry> revealed_by(const Machine& m, std::uint64_t cutoff) {
  std::vector<MachineEntry> out;
  for (const auto& e : m.entries)
    if (e.time <= cutoff) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const MachineEntry& a, const MachineEntry& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.program < b.program;
  });
  return out;
}

Semimeasure apriori(const Machine& m, Fuel fuel) {
  auto cut = revealed_by(m, fuel.steps);
  Q declared = kraft_sum(m);
  return Semimeasure{
      [cut](std::uint64_t i) {
        std::vector<Q> partials;
        Q run = 0;
        for (const auto& e : cut)
          if (e.output == i) {
            run += q_pow2(-static_cast<long>(e.program.size()));
            partials.push_back(run);
          }
        return stream_from_vector<Q>(std::move(partials));
      },
      declared};
}

Verdict<std::uint64_t> kp(const Machine& m, std::uint64_t i, Fuel fuel) {
  std::optional<std::uint64_t> best;
  for (const auto& e : m.entries)
    if (e.time <= fuel.steps && e.output == i)
      if (!best || e.program.size() < *best) best = e.program.size();
  return best ? Verdict<std::uint64_t>::of(*best) : Verdict<std::uint64_t>::pending();
}

Q omega(const Machine& m, Fuel fuel) {
  Q total = 0;
  for (const auto& e : m.entries)
    if (e.time <= fuel.steps)
      total += q_pow2(-static_cast<long>(e.program.size()));
  return total;
}

std::uint64_t bp(const Machine& m, std::uint64_t b) {
  std::uint64_t best = 0;
  for (const auto& [out, len] : shortest_lengths(m))
    if (len <= b && out > best) best = out;
  return best;
}

std::uint64_t bp_prime(const Machine& m, std::uint64_t b) {
  auto mass = output_masses(m.entries);
  Q thr = q_pow2(-static_cast<long>(b));
  auto tail_above = [&](std::uint64_t n) {
    Q t = 0;
    for (const auto& [out, w] : mass)
      if (out > n) t += w;
    return t;
  };
  if (tail_above(0) < thr) return 0;
  for (const auto& [out, w] : mass) {
    (void)w;
    if (tail_above(out) < thr) return out;
  }
  return 0;  // empty machine: tail_above(0) == 0 already returned
}

std::uint64_t busy_time(const Machine& m, std::uint64_t b) {
  std::uint64_t best = 0;
  for (const auto& e : m.entries)
    if (e.program.size() <= b && e.time > best) best = e.time;
  return best;
}

std::uint64_t modulus(const LscReal& a, const Q& eps, const Q& known_limit) {
  if (eps <= 0) throw DomainError("modulus needs a positive eps");
  FuelMeter meter(Fuel{1u << 22});
  for (std::uint64_t n = 0;; ++n) {
    auto p = a.approx(n, meter);
    if (p.starved()) throw DomainError("modulus ran out of fuel before converging");
    // every earlier approximation stayed eps away, so an exhausted stream
    // never reaches the declared limit
    if (p.ended()) throw LimitInconsistent("declared limit unreachable within eps");
    if (*p >= known_limit)
      throw LimitInconsistent("approximation " + q_str(*p) +
                              " reached declared limit " + q_str(known_limit));
    if (known_limit - *p < eps) return n == 0 ? 0 : n - 1;
  }
}

RatioTrace solovay_ratio(const LscReal& r, const Machine& m, Fuel fuel) {
  if (r.kind() != LscReal::Kind::series)
    throw DomainError("ratio trace expects a series presentation");
  auto mass = output_masses(revealed_by(m, fuel.steps));
  RatioTrace trace;
  FuelMeter meter(fuel);
  for (std::uint64_t i = 0;; ++i) {
    auto t = r.term(i, meter);
    if (!t.ok()) break;
    auto it = mass.find(i);
    if (it != mass.end() && it->second > 0)
      trace.ratios.emplace_back(i, Q(*t / it->second));
    else
      trace.zero_mass.push_back(i);
  }
  return trace;
}

SolovayTable build_solovay_table(const std::vector<std::vector<Q>>& rows) {
  SolovayTable table;
  table.a.reserve(rows.size());
  table.crossed.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Q> arow(row.size(), Q(0));
    std::vector<Q> crossed;
    Q sum = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < 0) throw DomainError("negative mass in threshold row");
      Q prev = sum;
      sum += row[j];
      if (sum <= 0) continue;
      // largest power 2^-k, k >= 1, in (prev, sum], if one exists
      long e = std::min(pow2_floor_exp(sum), -1L);
      Q t = q_pow2(e);
      if (t > prev) {
        arow[j] = t;
        crossed.push_back(t);
      }
    }
    table.a.push_back(std::move(arow));
    table.crossed.push_back(std::move(crossed));
  }
  return table;
}

Machine selftiming_machine(unsigned max_len) {
  if (max_len == 0 || max_len > 62)
    throw DomainError("self-timing table wants 1..62 program lengths");
  Machine m;
  for (unsigned len = 1; len <= max_len; ++len) {
    MachineEntry e;
    e.program = std::string(len - 1, '1') + "0";
    e.time = std::uint64_t{1} << len;
    e.output = e.time;
    m.entries.push_back(std::move(e));
  }
  validate_machine(m);
  return m;
}

Machine random_machine(std::uint64_t seed, std::size_t count,
                       std::uint64_t output_range, std::uint64_t time_range) {
  if (output_range == 0 || time_range == 0)
    throw DomainError("random machine ranges must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(1, 12);
  std::uniform_int_distribution<std::uint64_t> out_dist(0, output_range - 1);
  std::uniform_int_distribution<std::uint64_t> time_dist(1, time_range);
  Machine m;
  Q kraft = 0;
  std::size_t attempts = 0;
  while (m.entries.size() < count && attempts < 10000) {
    ++attempts;
    int len = len_dist(rng);
    std::string p;
    for (int b = 0; b < len; ++b) p += (rng() & 1) ? '1' : '0';
    bool clash = false;
    for (const auto& e : m.entries) {
      const std::string& q = e.program;
      const std::string& shorter = q.size() < p.size() ? q : p;
      const std::string& longer = q.size() < p.size() ? p : q;
      if (longer.compare(0, shorter.size(), shorter) == 0) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    Q w = q_pow2(-len);
    if (kraft + w > 1) continue;
    kraft += w;
    m.entries.push_back({std::move(p), out_dist(rng), time_dist(rng)});
  }
  validate_machine(m);
  return m;
}

Q index_rational(std::uint64_t n) {
  if (n == 0) return Q(0);
  auto [i, j] = unpair_index(n - 1);
  long num = static_cast<long>(i / 2 + 1);
  if (i % 2 == 1) num = -num;
  Q q(num, static_cast<unsigned long>(j + 1));
  q.canonicalize();
  return q;
}

std::uint64_t pair_index(std::uint64_t i, std::uint64_t j) {
  std::uint64_t s = i + j;
  return s * (s + 1) / 2 + j;
}

std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t n) {
  std::uint64_t s = 0;
  while ((s + 1) * (s + 2) / 2 <= n) ++s;
  std::uint64_t j = n - s * (s + 1) / 2;
  return {s - j, j};
}

}  // namespace semireal
