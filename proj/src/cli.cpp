#include "semireal/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "semireal/bundled.hpp"
#include "semireal/covers.hpp"
#include "semireal/errors.hpp"
#include "semireal/games.hpp"
#include "semireal/machine.hpp"
#include "semireal/reduce.hpp"
#include "semireal/transforms.hpp"

namespace semireal {

namespace {

using json = nlohmann::json;

std::uint64_t env_default_fuel() {
  if (const char* e = std::getenv("SEMIREAL_FUEL_DEFAULT")) {
    try {
      return std::stoull(e);
    } catch (const std::logic_error&) {
      throw DomainError("SEMIREAL_FUEL_DEFAULT is not a number: '" + std::string(e) + "'");
    }
  }
  return 4096;
}

json interval_json(const Interval& iv) {
  return json{{"left", q_str(iv.left)},
              {"right", q_str(iv.right)},
              {"openness", openness_str(iv)}};
}

json items_json(const std::vector<Interval>& items) {
  json a = json::array();
  for (const Interval& iv : items) a.push_back(interval_json(iv));
  return a;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

// lines `point weight`, '#' comments
std::vector<std::pair<Q, Q>> parse_weights(const std::string& text) {
  std::vector<std::pair<Q, Q>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ln += 1;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string sp, sw;
    if (!(ls >> sp)) continue;
    if (!(ls >> sw)) throw ParseError("weights line " + std::to_string(ln) + ": want `point weight`");
    out.emplace_back(q_parse(sp), q_parse(sw));
  }
  return out;
}

// lines of space-separated rationals, one row per line
std::vector<std::vector<Q>> parse_rows(const std::string& text) {
  std::vector<std::vector<Q>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Q> row;
    std::string tok;
    while (ls >> tok) row.push_back(q_parse(tok));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Q> parse_q_list(const std::string& text) {
  std::vector<Q> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(q_parse(tok));
  }
  return out;
}

const char* status_str(Prediction::Status s) {
  switch (s) {
    case Prediction::Status::active: return "active";
    case Prediction::Status::violated: return "violated";
    default: return "standing";
  }
}

struct CommonArgs {
  std::uint64_t fuel = 0;  // filled from the env default before parsing
};

void add_fuel(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--fuel", c.fuel, "computation budget in steps");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    CLI::App app{"exact-rational workbench for semicomputable reals"};
    app.require_subcommand(1);

    const std::uint64_t fuel0 = env_default_fuel();

    // ---- eval ----------------------------------------------------------
    struct {
      CommonArgs c;
      std::string real;
      std::uint64_t terms = 16;
    } ev;
    ev.c.fuel = fuel0;
    auto* eval_cmd = app.add_subcommand("eval", "terms and lower approximations of a presentation");
    eval_cmd->add_option("--real", ev.real, "bundled name or file")->required();
    eval_cmd->add_option("--terms", ev.terms, "how many indices to show");
    add_fuel(eval_cmd, ev.c);
    eval_cmd->callback([&] {
      LscReal x = resolve_series(ev.real);
      FuelMeter m(Fuel{ev.c.fuel});
      json terms = json::array(), approx = json::array();
      bool ended = false;
      for (std::uint64_t i = 0; i < ev.terms; ++i) {
        auto p = x.term(i, m);
        if (p.ended()) { ended = true; break; }
        if (p.starved()) break;
        terms.push_back(q_str(*p));
      }
      for (std::uint64_t i = 0; i < ev.terms; ++i) {
        auto p = x.approx(i, m);
        if (!p.ok()) break;
        approx.push_back(q_str(*p));
      }
      emit(out, json{{"schema", "semireal.eval.v1"},
                     {"kind", x.kind() == LscReal::Kind::sequence ? "sequence" : "series"},
                     {"terms", terms},
                     {"approx", approx},
                     {"ended", ended},
                     {"known_sup", x.known_sup() ? json(q_str(*x.known_sup())) : json()},
                     {"fuel", ev.c.fuel}});
    });

    // ---- reduce --------------------------------------------------------
    struct {
      CommonArgs c;
      std::string alpha, rho, query;
    } rd;
    rd.c.fuel = fuel0;
    auto* reduce_cmd = app.add_subcommand("reduce", "translate a query through a gap witness");
    reduce_cmd->add_option("--alpha", rd.alpha, "translation target")->required();
    reduce_cmd->add_option("--rho", rd.rho, "gap presentation")->required();
    reduce_cmd->add_option("--query", rd.query, "rational below alpha+rho")->required();
    add_fuel(reduce_cmd, rd.c);
    reduce_cmd->callback([&] {
      ReductionWitness w = witness_from_sum(resolve_series(rd.alpha), resolve_series(rd.rho));
      FuelMeter m(Fuel{rd.c.fuel});
      auto v = w.phi(q_parse(rd.query), m);
      emit(out, json{{"schema", "semireal.reduce.v1"},
                     {"constant", q_str(w.constant)},
                     {"query", q_str(q_parse(rd.query))},
                     {"confirmed", v.confirmed()},
                     {"translated", v.confirmed() ? json(q_str(*v.value)) : json()},
                     {"fuel", rd.c.fuel}});
    });

    // ---- race ----------------------------------------------------------
    struct {
      CommonArgs c;
      std::string alpha, beta;
      std::uint64_t holes = 16;
    } rc;
    rc.c.fuel = fuel0;
    auto* race_cmd = app.add_subcommand("race", "place one real's increments along another");
    race_cmd->add_option("--alpha", rc.alpha, "length supplier")->required();
    race_cmd->add_option("--beta", rc.beta, "placement driver")->required();
    race_cmd->add_option("--holes", rc.holes, "hole terms to print");
    add_fuel(race_cmd, rc.c);
    race_cmd->callback([&] {
      RaceOutcome r = race(resolve_series(rc.alpha), resolve_series(rc.beta), Fuel{rc.c.fuel});
      json j{{"schema", "semireal.race.v1"},
             {"status", r.status == RaceOutcome::Status::CoverProduced ? "cover_produced"
                                                                       : "reducing_so_far"},
             {"alpha_exhausted", r.alpha_exhausted},
             {"placed", items_json(r.placed)},
             {"fuel", rc.c.fuel}};
      if (r.holes) {
        FuelMeter m(Fuel{rc.c.fuel});
        json holes = json::array();
        for (std::uint64_t i = 0; i < rc.holes; ++i) {
          auto p = r.holes->term(i, m);
          if (!p.ok()) break;
          holes.push_back(q_str(*p));
        }
        j["holes"] = holes;
      }
      if (r.cover) {
        FuelMeter m(Fuel{rc.c.fuel});
        auto prefix = cover_prefix(*r.cover, m);
        j["cover"] = json{{"budget", r.cover->length_budget ? json(q_str(*r.cover->length_budget)) : json()},
                          {"items", items_json(prefix.items)}};
      }
      emit(out, j);
    });

    // ---- cover-transform ------------------------------------------------
    struct {
      CommonArgs c;
      std::string cover, alpha, rho;
      std::uint64_t items = 16;
    } ct;
    ct.c.fuel = fuel0;
    auto* ct_cmd = app.add_subcommand("cover-transform", "rebase a cover of alpha+rho onto alpha");
    ct_cmd->add_option("--cover", ct.cover, "cover of alpha+rho")->required();
    ct_cmd->add_option("--alpha", ct.alpha, "translation target")->required();
    ct_cmd->add_option("--rho", ct.rho, "gap presentation")->required();
    ct_cmd->add_option("--items", ct.items, "max output items");
    add_fuel(ct_cmd, ct.c);
    ct_cmd->callback([&] {
      LscReal alpha = resolve_series(ct.alpha);
      LscReal rho = resolve_series(ct.rho);
      ReductionWitness w = witness_from_sum(alpha, rho);
      LscReal beta = sum(alpha, rho);
      Cover moved = transform_cover(resolve_cover(ct.cover), w, alpha, beta);
      FuelMeter m(Fuel{ct.c.fuel});
      auto prefix = cover_prefix(moved, m, ct.items);
      emit(out, json{{"schema", "semireal.cover-transform.v1"},
                     {"items", items_json(prefix.items)},
                     {"ended", prefix.ended},
                     {"budget", moved.length_budget ? json(q_str(*moved.length_budget)) : json()},
                     {"fuel", ct.c.fuel}});
    });

    // ---- union-bound -----------------------------------------------------
    struct {
      CommonArgs c;
      std::string cover, weights, cq;
    } ub;
    ub.c.fuel = fuel0;
    auto* ub_cmd = app.add_subcommand("union-bound", "certify a union measure bound from point weights");
    ub_cmd->add_option("--intervals", ub.cover, "cover holding the intervals")->required();
    ub_cmd->add_option("--weights", ub.weights, "file of `point weight` lines")->required();
    ub_cmd->add_option("--c", ub.cq, "density constant")->required();
    add_fuel(ub_cmd, ub.c);
    ub_cmd->callback([&] {
      Cover cov = resolve_cover(ub.cover);
      FuelMeter m(Fuel{ub.c.fuel});
      auto prefix = cover_prefix(cov, m);
      UnionBoundResult r = union_bound(prefix.items, parse_weights(slurp(ub.weights)), q_parse(ub.cq));
      json even = json::array(), odd = json::array();
      for (auto i : r.even) even.push_back(i);
      for (auto i : r.odd) odd.push_back(i);
      emit(out, json{{"schema", "semireal.union-bound.v1"},
                     {"bound", q_str(r.bound)},
                     {"measure", q_str(r.measure)},
                     {"kept", items_json(r.kept)},
                     {"even", even},
                     {"odd", odd},
                     {"fuel", ub.c.fuel}});
    });

    // ---- game ------------------------------------------------------------
    struct {
      CommonArgs c;
      std::string real, cover, eps;
    } gm;
    gm.c.fuel = fuel0;
    auto* game_cmd = app.add_subcommand("game", "play the prediction game driven by a cover");
    game_cmd->add_option("--real", gm.real, "watched presentation")->required();
    game_cmd->add_option("--cover", gm.cover, "cover the strategy consults")->required();
    game_cmd->add_option("--epsilon", gm.eps, "wager allowance")->required();
    add_fuel(game_cmd, gm.c);
    game_cmd->callback([&] {
      GameTrace t = play(strategy_from_cover(resolve_cover(gm.cover)), resolve_series(gm.real),
                         q_parse(gm.eps), Fuel{gm.c.fuel});
      json preds = json::array();
      for (const Prediction& p : t.predictions)
        preds.push_back(json{{"index", p.base_index},
                             {"base", q_str(p.base_value)},
                             {"delta", q_str(p.delta)},
                             {"status", status_str(p.status)}});
      emit(out, json{{"schema", "semireal.game.v1"},
                     {"epsilon", q_str(t.epsilon)},
                     {"delta_total", q_str(t.delta_total)},
                     {"win_so_far", t.win_so_far},
                     {"predictions", preds},
                     {"fuel", gm.c.fuel}});
    });

    // ---- paint -----------------------------------------------------------
    struct {
      CommonArgs c;
      std::string real, weights;
      bool doubling = false;
      std::uint64_t items = 32;
    } pt;
    pt.c.fuel = fuel0;
    auto* paint_cmd = app.add_subcommand("paint", "paint allowances rightward from a real's approximations");
    paint_cmd->add_option("--real", pt.real, "anchor presentation")->required();
    paint_cmd->add_option("--weights", pt.weights, "comma list: painter i's allowance")->required();
    paint_cmd->add_flag("--doubling", pt.doubling, "double every allowance on receipt");
    paint_cmd->add_option("--items", pt.items, "max painted zones");
    add_fuel(paint_cmd, pt.c);
    paint_cmd->callback([&] {
      auto list = std::make_shared<std::vector<Q>>(parse_q_list(pt.weights));
      WeightFamily h = [list](std::uint64_t i) {
        if (i < list->size()) return stream_from_vector(std::vector<Q>{(*list)[i]});
        return stream_from_vector(std::vector<Q>{});
      };
      Cover c = painter(resolve_series(pt.real), h, pt.doubling);
      FuelMeter m(Fuel{pt.c.fuel});
      auto prefix = cover_prefix(c, m, pt.items);
      emit(out, json{{"schema", "semireal.paint.v1"},
                     {"items", items_json(prefix.items)},
                     {"ended", prefix.ended},
                     {"painted_measure", q_str(union_measure(prefix.items))},
                     {"fuel", pt.c.fuel}});
    });

    // ---- wset ------------------------------------------------------------
    struct {
      CommonArgs c;
      std::string series, set, eps, from_cover;
      std::uint64_t items = 32;
    } ws;
    ws.c.fuel = fuel0;
    auto* wset_cmd = app.add_subcommand("wset", "paint selected series terms, or read a selection off a cover");
    wset_cmd->add_option("--series", ws.series, "series presentation")->required();
    wset_cmd->add_option("--set", ws.set, "indices like `0,2,5` or `3-`");
    wset_cmd->add_option("--epsilon", ws.eps, "selected-mass allowance");
    wset_cmd->add_option("--from-cover", ws.from_cover, "read the selection back off this cover");
    wset_cmd->add_option("--items", ws.items, "max painted zones");
    add_fuel(wset_cmd, ws.c);
    wset_cmd->callback([&] {
      LscReal d = resolve_series(ws.series);
      if (!ws.from_cover.empty()) {
        auto picked = wset_from_cover(d, resolve_cover(ws.from_cover), Fuel{ws.c.fuel});
        json sel = json::array();
        for (auto i : picked) sel.push_back(i);
        emit(out, json{{"schema", "semireal.wset.v1"},
                       {"mode", "from_cover"},
                       {"selected", sel},
                       {"fuel", ws.c.fuel}});
        return;
      }
      if (ws.set.empty() || ws.eps.empty())
        throw CLI::ValidationError("wset", "--set and --epsilon are required without --from-cover");
      Cover c = wset_check(d, IndexSet::parse(ws.set), q_parse(ws.eps));
      FuelMeter m(Fuel{ws.c.fuel});
      auto prefix = cover_prefix(c, m, ws.items);
      emit(out, json{{"schema", "semireal.wset.v1"},
                     {"mode", "check"},
                     {"items", items_json(prefix.items)},
                     {"ended", prefix.ended},
                     {"budget", c.length_budget ? json(q_str(*c.length_budget)) : json()},
                     {"fuel", ws.c.fuel}});
    });

    // ---- machine ---------------------------------------------------------
    struct {
      CommonArgs c;
      std::string machine = "default";
      std::uint64_t n = 0;
      std::uint64_t bound = 0;
    } mc;
    mc.c.fuel = fuel0;
    auto* mach_cmd = app.add_subcommand("machine", "finite prefix-free machine quantities");
    mach_cmd->require_subcommand(1);

    auto add_machine_opt = [&](CLI::App* sub) {
      sub->add_option("--machine", mc.machine, "bundled name or file");
      add_fuel(sub, mc.c);
    };

    auto* st_cmd = mach_cmd->add_subcommand("stats", "table size, Kraft sum, revealed mass");
    add_machine_opt(st_cmd);
    st_cmd->callback([&] {
      Machine m = resolve_machine(mc.machine);
      emit(out, json{{"schema", "semireal.machine-stats.v1"},
                     {"entries", m.entries.size()},
                     {"kraft", q_str(kraft_sum(m))},
                     {"revealed", revealed_by(m, mc.c.fuel).size()},
                     {"omega", q_str(omega(m, Fuel{mc.c.fuel}))},
                     {"fuel", mc.c.fuel}});
    });

    auto* om_cmd = mach_cmd->add_subcommand("omega", "halting mass revealed within fuel");
    add_machine_opt(om_cmd);
    om_cmd->callback([&] {
      Machine m = resolve_machine(mc.machine);
      emit(out, json{{"schema", "semireal.machine-omega.v1"},
                     {"omega", q_str(omega(m, Fuel{mc.c.fuel}))},
                     {"fuel", mc.c.fuel}});
    });

    auto* kp_cmd = mach_cmd->add_subcommand("kp", "shortest program length for an output");
    add_machine_opt(kp_cmd);
    kp_cmd->add_option("--n", mc.n, "output value")->required();
    kp_cmd->callback([&] {
      Machine m = resolve_machine(mc.machine);
      auto v = kp(m, mc.n, Fuel{mc.c.fuel});
      emit(out, json{{"schema", "semireal.machine-kp.v1"},
                     {"n", mc.n},
                     {"confirmed", v.confirmed()},
                     {"kp", v.confirmed() ? json(*v.value) : json()},
                     {"fuel", mc.c.fuel}});
    });

    auto* bp_cmd = mach_cmd->add_subcommand("bp", "largest output with complexity under a bound");
    add_machine_opt(bp_cmd);
    bp_cmd->add_option("--m", mc.bound, "length bound")->required();
    bp_cmd->callback([&] {
      Machine m = resolve_machine(mc.machine);
      emit(out, json{{"schema", "semireal.machine-bp.v1"},
                     {"m", mc.bound},
                     {"bp", bp(m, mc.bound)}});
    });

    auto* bpp_cmd = mach_cmd->add_subcommand("bpprime", "least split point with light tail mass");
    add_machine_opt(bpp_cmd);
    bpp_cmd->add_option("--m", mc.bound, "mass exponent")->required();
    bpp_cmd->callback([&] {
      Machine m = resolve_machine(mc.machine);
      emit(out, json{{"schema", "semireal.machine-bpprime.v1"},
                     {"m", mc.bound},
                     {"bp_prime", bp_prime(m, mc.bound)}});
    });

    auto* t_cmd = mach_cmd->add_subcommand("t", "longest running time under a length bound");
    add_machine_opt(t_cmd);
    t_cmd->add_option("--m", mc.bound, "length bound")->required();
    t_cmd->callback([&] {
      Machine m = resolve_machine(mc.machine);
      emit(out, json{{"schema", "semireal.machine-t.v1"},
                     {"m", mc.bound},
                     {"busy_time", busy_time(m, mc.bound)}});
    });

    // ---- solovay-fn ------------------------------------------------------
    struct {
      std::string rows;
    } sf;
    auto* sf_cmd = app.add_subcommand("solovay-fn", "threshold table of row enumerations, as CSV");
    sf_cmd->add_option("--rows", sf.rows, "file: one row of rationals per line")->required();
    sf_cmd->callback([&] {
      SolovayTable t = build_solovay_table(parse_rows(slurp(sf.rows)));
      std::vector<std::vector<Q>> input = parse_rows(slurp(sf.rows));
      out << "row,col,input,threshold\n";
      for (std::size_t i = 0; i < t.a.size(); ++i)
        for (std::size_t j = 0; j < t.a[i].size(); ++j)
          out << i << "," << j << "," << q_str(input[i][j]) << "," << q_str(t.a[i][j]) << "\n";
    });

    // ---- solovay-ratio ---------------------------------------------------
    struct {
      CommonArgs c;
      std::string series, machine = "default";
    } sr;
    sr.c.fuel = fuel0;
    auto* sr_cmd = app.add_subcommand("solovay-ratio", "series terms against output masses");
    sr_cmd->add_option("--series", sr.series, "series presentation")->required();
    sr_cmd->add_option("--machine", sr.machine, "bundled name or file");
    add_fuel(sr_cmd, sr.c);
    sr_cmd->callback([&] {
      RatioTrace t = solovay_ratio(resolve_series(sr.series), resolve_machine(sr.machine),
                                   Fuel{sr.c.fuel});
      json ratios = json::array();
      for (const auto& [i, q] : t.ratios)
        ratios.push_back(json{{"index", i}, {"ratio", q_str(q)}});
      json zero = json::array();
      for (auto i : t.zero_mass) zero.push_back(i);
      emit(out, json{{"schema", "semireal.solovay-ratio.v1"},
                     {"ratios", ratios},
                     {"zero_mass", zero},
                     {"fuel", sr.c.fuel}});
    });

    // ---- regroup ---------------------------------------------------------
    struct {
      std::string table;
      std::uint64_t rows = 8;
    } rg;
    auto* rg_cmd = app.add_subcommand("regroup", "row sums of a doubly indexed series");
    rg_cmd->add_option("--table", rg.table, "file of `i j num/den` lines")->required();
    rg_cmd->add_option("--rows", rg.rows, "rows to print");
    rg_cmd->callback([&] {
      DoubleSeries d = load_double_series_file(rg.table);
      json rows = json::array();
      for (std::uint64_t i = 0; i < rg.rows; ++i) rows.push_back(q_str(row_sum(d, i)));
      emit(out, json{{"schema", "semireal.regroup.v1"}, {"rows", rows}});
    });

    // ---- mtilde ----------------------------------------------------------
    struct {
      CommonArgs c;
      std::string table, masses, cq;
      std::uint64_t rows = 4;
    } mt;
    mt.c.fuel = fuel0;
    auto* mt_cmd = app.add_subcommand("mtilde", "greedy per-row allocation against mass bounds");
    mt_cmd->add_option("--table", mt.table, "file of `i j num/den` lines")->required();
    mt_cmd->add_option("--masses", mt.masses, "series: term i bounds row i")->required();
    mt_cmd->add_option("--c", mt.cq, "scale factor")->required();
    mt_cmd->add_option("--rows", mt.rows, "rows to print");
    add_fuel(mt_cmd, mt.c);
    mt_cmd->callback([&] {
      DoubleSeries d = load_double_series_file(mt.table);
      LscReal masses = resolve_series(mt.masses);
      if (masses.kind() != LscReal::Kind::series)
        throw DomainError("--masses must be a series presentation");
      LscReal mm = masses;
      Semimeasure bounds;
      bounds.declared_total = Q(1);
      bounds.weight = [mm](std::uint64_t i) {
        return MemoStream<Q>([mm, i](std::uint64_t s, FuelMeter& meter,
                                     const MemoStream<Q>&) -> Pull<Q> {
          if (s > 0) return Pull<Q>::end();
          auto p = mm.term(i, meter);
          if (p.ended()) return Pull<Q>::end();
          if (!p.ok()) return Pull<Q>::carry(p);
          return Pull<Q>::some(*p);
        });
      };
      Allocation al = allocate_mtilde(d, bounds, q_parse(mt.cq));
      FuelMeter m(Fuel{mt.c.fuel});
      json cells = json::array();
      for (std::uint64_t i = 0; i < mt.rows; ++i) {
        for (std::uint64_t j : d.row_support(i)) {
          auto v = al.mtilde(i, j).at(0, m);
          if (!v.ok()) continue;
          cells.push_back(json{{"i", i}, {"j", j}, {"value", q_str(*v)}});
        }
      }
      emit(out, json{{"schema", "semireal.mtilde.v1"},
                     {"c", q_str(q_parse(mt.cq))},
                     {"cells", cells},
                     {"fuel", mt.c.fuel}});
    });

    // ---- mesh ------------------------------------------------------------
    struct {
      std::string a, b, sum;
      bool nonincreasing = false;
    } me;
    auto* me_cmd = app.add_subcommand("mesh", "common refinement of two equal-sum series");
    me_cmd->add_option("--a", me.a, "first series")->required();
    me_cmd->add_option("--b", me.b, "second series")->required();
    me_cmd->add_option("--sum", me.sum, "shared total")->required();
    me_cmd->add_flag("--nonincreasing", me.nonincreasing, "split rising terms afterwards");
    me_cmd->callback([&] {
      LscReal c = mesh_refine(resolve_series(me.a), resolve_series(me.b), q_parse(me.sum));
      if (me.nonincreasing) c = split_to_nonincreasing(c);
      FuelMeter m(Fuel{1u << 16});
      json terms = json::array();
      for (std::uint64_t i = 0;; ++i) {
        auto p = c.term(i, m);
        if (!p.ok()) break;
        terms.push_back(q_str(*p));
      }
      emit(out, json{{"schema", "semireal.mesh.v1"},
                     {"terms", terms},
                     {"sum", q_str(q_parse(me.sum))}});
    });

    // ---- covermeasure ----------------------------------------------------
    struct {
      CommonArgs c;
      std::string series, cover, budget;
      unsigned n = 1;
      std::uint64_t indices = 8;
      std::uint64_t stages = 4;
    } cm;
    cm.c.fuel = fuel0;
    auto* cm_cmd = app.add_subcommand("covermeasure", "boost mass onto term windows a cover traps");
    cm_cmd->add_option("--series", cm.series, "series presentation")->required();
    cm_cmd->add_option("--cover", cm.cover, "trapping cover")->required();
    cm_cmd->add_option("--budget", cm.budget, "declared cover budget")->required();
    cm_cmd->add_option("--n", cm.n, "boost exponent");
    cm_cmd->add_option("--indices", cm.indices, "indices to print");
    cm_cmd->add_option("--stages", cm.stages, "reveals per index");
    add_fuel(cm_cmd, cm.c);
    cm_cmd->callback([&] {
      Cover cov = resolve_cover(cm.cover);
      cov.length_budget = q_parse(cm.budget);
      Semimeasure msr = cover_to_semimeasure(resolve_series(cm.series), cov, cm.n);
      FuelMeter m(Fuel{cm.c.fuel});
      json values = json::array();
      for (std::uint64_t i = 0; i < cm.indices; ++i)
        values.push_back(json{{"index", i}, {"mass", q_str(semimeasure_value(msr, i, cm.stages, m))}});
      Q total = semimeasure_prefix_total(msr, cm.indices ? cm.indices - 1 : 0, cm.stages, m);
      emit(out, json{{"schema", "semireal.covermeasure.v1"},
                     {"declared_total", q_str(msr.declared_total)},
                     {"values", values},
                     {"prefix_total", q_str(total)},
                     {"fuel", cm.c.fuel}});
    });

    // ---- gap-experiment ---------------------------------------------------
    struct {
      std::uint64_t max_m = 8;
      std::uint64_t seed = 0;
      std::uint64_t random = 0;
    } ge;
    auto* ge_cmd = app.add_subcommand("gap-experiment",
                                      "tabulate the two cut points and their gap across bundled machines");
    ge_cmd->add_option("--max-m", ge.max_m, "largest bound to tabulate");
    ge_cmd->add_option("--seed", ge.seed, "seed for generated machines");
    ge_cmd->add_option("--random-machines", ge.random, "how many generated machines to add");
    ge_cmd->callback([&] {
      std::vector<std::pair<std::string, Machine>> table;
      for (const std::string& name : bundled_machine_names())
        table.emplace_back(name, bundled_machine(name));
      for (std::uint64_t k = 0; k < ge.random; ++k)
        table.emplace_back("random" + std::to_string(ge.seed + k),
                           random_machine(ge.seed + k, 12, 64, 64));
      out << "machine,m,bp,bp_prime,gap\n";
      for (const auto& [name, m] : table) {
        for (std::uint64_t b = 0; b <= ge.max_m; ++b) {
          std::uint64_t lo = bp(m, b);
          std::uint64_t hi = bp_prime(m, b);
          long long gap = static_cast<long long>(hi) - static_cast<long long>(lo);
          out << name << "," << b << "," << lo << "," << hi << "," << gap << "\n";
        }
      }
    });

    // ----------------------------------------------------------------------
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << e.what() << "\n";
      return 2;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace semireal
