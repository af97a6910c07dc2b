#include "eprgames.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "eprgames/bimatrix.hpp"
#include "eprgames/correlation.hpp"
#include "eprgames/epr_sim.hpp"
#include "eprgames/errors.hpp"
#include "eprgames/gfunction.hpp"
#include "eprgames/grid_search.hpp"
#include "eprgames/json_io.hpp"
#include "eprgames/lhv.hpp"
#include "eprgames/quantum.hpp"
#include "eprgames/solve.hpp"

using nlohmann::json;
using namespace eprgames;

extern "C" {
struct epr_game {
  BimatrixGame v;
};
struct epr_gfun {
  GFunction v;
};
struct epr_measure {
  LhvMeasure v;
};
}

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

template <typename F>
epr_status guarded(F&& f) {
  try {
    f();
    return EPR_OK;
  } catch (const PreconditionError& e) {
    set_error(e.what());
    return EPR_ERR_PRECONDITION;
  } catch (const InsufficientDataError& e) {
    set_error(e.what());
    return EPR_ERR_INSUFFICIENT_DATA;
  } catch (const NoSolutionError& e) {
    set_error(e.what());
    return EPR_ERR_NO_SOLUTION;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return EPR_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return EPR_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return EPR_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

epr_status require(bool ok, const char* what) {
  if (!ok) {
    set_error(std::string("null argument: ") + what);
    return EPR_ERR_INVALID_ARGUMENT;
  }
  return EPR_OK;
}

CorrelationModel model_from_enum(epr_model model) {
  switch (model) {
    case EPR_MODEL_CLASSICAL:
      return CorrelationModel::classical();
    case EPR_MODEL_SINGLET:
      return CorrelationModel::singlet();
    case EPR_MODEL_MIXTURE:
      return CorrelationModel::mixture();
  }
  throw std::invalid_argument("unknown correlation model enum value");
}

// Locale-independent float text with 12 significant digits, for CSV output.
std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

json profile_json(const MixedProfile& p) { return json::array({p.pa, p.pb}); }

json solution_json(const CorrGameSolution& sol, const BimatrixGame& game) {
  json pure = json::array();
  for (const PureNash& ne : sol.classical_pure)
    pure.push_back({{"row", ne.cell.row},
                    {"col", ne.cell.col},
                    {"labels", {game.row_label(ne.cell.row), game.col_label(ne.cell.col)}},
                    {"strict", ne.strict}});
  json mixed = json::array();
  for (const MixedProfile& p : sol.classical_mixed.profiles)
    mixed.push_back(profile_json(p));

  json quantum_all = json::array();
  json payoffs = json::array();
  for (size_t i = 0; i < sol.quantum_ne.size(); ++i) {
    quantum_all.push_back(profile_json(sol.quantum_ne[i]));
    json values = json::array();
    for (const PayoffPair& p : sol.quantum_payoffs[i])
      values.push_back(json::array({p.a, p.b}));
    payoffs.push_back({{"profile", profile_json(sol.quantum_ne[i])},
                       {"values", values}});
  }
  json confirmed = json::array();
  for (bool c : sol.grid_confirmed) confirmed.push_back(c);

  return {{"classical_ne",
           {{"pure", pure}, {"mixed", mixed}, {"continuum", sol.classical_mixed.continuum}}},
          {"quantum_ne", sol.quantum_ne.empty() ? json() : profile_json(sol.quantum_ne[0])},
          {"quantum_ne_all", quantum_all},
          {"payoffs", payoffs},
          {"grid", {{"n", sol.grid_n}, {"confirmed", confirmed}}}};
}

json report_json(const ArbiterReport& rep) {
  auto opt = [](const std::optional<PairEstimate>& e) -> json {
    if (!e) return json();
    return {{"count", e->count}, {"value", e->value}};
  };
  return {{"runs", rep.runs},
          {"p_hat", {{"alice", rep.pa_hat}, {"bob", rep.pb_hat}}},
          {"counts",
           {{"alice_z", rep.n_alice_z},
            {"bob_z", rep.n_bob_z},
            {"ac", rep.ac ? rep.ac->count : 0},
            {"cb", rep.cb ? rep.cb->count : 0},
            {"ab", rep.ab ? rep.ab->count : 0},
            {"cc", rep.cc ? rep.cc->count : 0}}},
          {"correlations",
           {{"ac", opt(rep.ac)}, {"cb", opt(rep.cb)}, {"ab", opt(rep.ab)}, {"cc", opt(rep.cc)}}}};
}

GameEntries entries_from_game(const BimatrixGame& game) {
  if (!game.symmetric_payoffs())
    throw PreconditionError("four-coin analysis needs a symmetric game");
  return {game.cell({0, 0}).a, game.cell({0, 1}).a, game.cell({1, 0}).a,
          game.cell({1, 1}).a};
}

}  // namespace

extern "C" {

const char* epr_version(void) { return "1.0.0"; }

const char* epr_last_error(void) { return t_last_error.c_str(); }

void epr_string_free(char* s) { std::free(s); }

/* -------- games -------- */

epr_status epr_game_create_named(const char* name, epr_game** out) {
  if (epr_status st = require(name && out, "name/out")) return st;
  return guarded([&] { *out = new epr_game{BimatrixGame::named(name)}; });
}

epr_status epr_game_create_from_json(const char* json_text, epr_game** out) {
  if (epr_status st = require(json_text && out, "json/out")) return st;
  return guarded([&] { *out = new epr_game{game_from_json(json_text)}; });
}

void epr_game_free(epr_game* game) { delete game; }

epr_status epr_game_to_json(const epr_game* game, char** json_out) {
  if (epr_status st = require(game && json_out, "game/json_out")) return st;
  return guarded([&] { *json_out = dup_string(game_to_json(game->v)); });
}

epr_status epr_game_payoff(const epr_game* game, double pa, double pb,
                           double* out_a, double* out_b) {
  if (epr_status st = require(game && out_a && out_b, "game/out")) return st;
  return guarded([&] {
    PayoffPair p = game->v.payoff({pa, pb});
    *out_a = p.a;
    *out_b = p.b;
  });
}

epr_status epr_game_pure_nash(const epr_game* game, char** json_out) {
  if (epr_status st = require(game && json_out, "game/json_out")) return st;
  return guarded([&] {
    json arr = json::array();
    for (const PureNash& ne : game->v.pure_nash())
      arr.push_back({{"row", ne.cell.row},
                     {"col", ne.cell.col},
                     {"labels",
                      {game->v.row_label(ne.cell.row), game->v.col_label(ne.cell.col)}},
                     {"strict", ne.strict}});
    *json_out = dup_string(arr.dump());
  });
}

epr_status epr_game_mixed_nash(const epr_game* game, char** json_out) {
  if (epr_status st = require(game && json_out, "game/json_out")) return st;
  return guarded([&] {
    MixedNashResult res = game->v.mixed_nash();
    json arr = json::array();
    for (const MixedProfile& p : res.profiles) arr.push_back(profile_json(p));
    *json_out =
        dup_string(json{{"profiles", arr}, {"continuum", res.continuum}}.dump());
  });
}

epr_status epr_game_pareto_optimal(const epr_game* game, int row, int col, int* out) {
  if (epr_status st = require(game && out, "game/out")) return st;
  return guarded([&] {
    if (row < 0 || row > 1 || col < 0 || col > 1)
      throw std::invalid_argument("cell indices must be 0 or 1");
    *out = game->v.pareto_optimal({row, col}) ? 1 : 0;
  });
}

/* -------- g-functions -------- */

epr_status epr_gfun_create(const char* spec, epr_gfun** out) {
  if (epr_status st = require(spec && out, "spec/out")) return st;
  return guarded([&] { *out = new epr_gfun{GFunction::parse(spec)}; });
}

epr_status epr_gfun_create_from_json(const char* json_text, epr_gfun** out) {
  if (epr_status st = require(json_text && out, "json/out")) return st;
  return guarded([&] { *out = new epr_gfun{gfunction_from_json(json_text)}; });
}

void epr_gfun_free(epr_gfun* g) { delete g; }

epr_status epr_gfun_eval(const epr_gfun* g, double theta, double* out) {
  if (epr_status st = require(g && out, "g/out")) return st;
  return guarded([&] { *out = g->v.eval(theta); });
}

epr_status epr_gfun_big_g(const epr_gfun* g, double x, double* out) {
  if (epr_status st = require(g && out, "g/out")) return st;
  return guarded([&] { *out = g->v.big_g(x); });
}

epr_status epr_gfun_invertible(const epr_gfun* g, int* out) {
  if (epr_status st = require(g && out, "g/out")) return st;
  return guarded([&] { *out = g->v.invertible() ? 1 : 0; });
}

epr_status epr_gfun_inverse(const epr_gfun* g, double p, double* out, int cap,
                            int* n_out, int* non_unique) {
  if (epr_status st = require(g && out && n_out, "g/out/n_out")) return st;
  return guarded([&] {
    Preimage pre = g->v.inverse_set(p);
    *n_out = static_cast<int>(pre.angles.size());
    if (non_unique) *non_unique = pre.non_unique ? 1 : 0;
    for (int i = 0; i < cap && i < *n_out; ++i) out[i] = pre.angles[i];
  });
}

epr_status epr_gfun_q_transform(const epr_gfun* g, double p, double* out, int cap,
                                int* n_out) {
  if (epr_status st = require(g && out && n_out, "g/out/n_out")) return st;
  return guarded([&] {
    std::vector<double> values = g->v.q_transform(p);
    *n_out = static_cast<int>(values.size());
    for (int i = 0; i < cap && i < *n_out; ++i) out[i] = values[i];
  });
}

/* -------- correlation games -------- */

epr_status epr_corr_payoff(const epr_game* game, const epr_gfun* g, double corr_ac,
                           double corr_cb, double* out_a, double* out_b) {
  if (epr_status st = require(game && g && out_a && out_b, "game/g/out")) return st;
  return guarded([&] {
    PayoffPair p = payoff_from_correlations(game->v, g->v, corr_ac, corr_cb);
    *out_a = p.a;
    *out_b = p.b;
  });
}

epr_status epr_corr_solve(const epr_game* game, const epr_gfun* g, epr_model model,
                          int grid_n, char** json_out) {
  if (epr_status st = require(game && g && json_out, "game/g/json_out")) return st;
  return guarded([&] {
    CorrelationGameSpec spec{game->v, g->v, model_from_enum(model)};
    CorrGameSolution sol = solve_correlation_game(spec, grid_n);
    *json_out = dup_string(solution_json(sol, game->v).dump());
  });
}

epr_status epr_corr_sweep_csv(const epr_game* game, const epr_gfun* g,
                              epr_model model, int steps, char** csv_out) {
  if (epr_status st = require(game && g && csv_out, "game/g/csv_out")) return st;
  return guarded([&] {
    if (steps < 2) throw std::invalid_argument("steps must be at least 2");
    CorrelationGameSpec spec{game->v, g->v, model_from_enum(model)};
    std::string csv = "theta_a,theta_b,payoff_a,payoff_b\n";
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < steps; ++i) {
      for (int j = 0; j < steps; ++j) {
        double ta = pi * i / (steps - 1);
        double tb = pi * j / (steps - 1);
        PayoffPair p = payoff_at_angles(spec, ta, tb);
        csv += fmt_double(ta) + "," + fmt_double(tb) + "," + fmt_double(p.a) + "," +
               fmt_double(p.b) + "\n";
      }
    }
    *csv_out = dup_string(csv);
  });
}

/* -------- EPR simulator -------- */

epr_status epr_sim_run(epr_model model, double theta_a, double theta_b, double pa,
                       double pb, uint64_t runs, uint64_t seed, const epr_game* game,
                       const epr_gfun* g, char** json_report_out) {
  if (epr_status st = require(json_report_out != nullptr, "json_report_out")) return st;
  return guarded([&] {
    if (!game != !g)
      throw std::invalid_argument("reward needs both a game and a g-function");
    ProtocolConfig config{theta_a, theta_b, pa, pb, model_from_enum(model), runs, seed};
    ArbiterReport rep = arbiter_report(run_protocol(config));
    json j = report_json(rep);
    if (game && g) {
      PayoffPair p = reward(rep, game->v, g->v);
      j["reward"] = json::array({p.a, p.b});
    }
    *json_report_out = dup_string(j.dump());
  });
}

epr_status epr_sim_records_csv(epr_model model, double theta_a, double theta_b,
                               double pa, double pb, uint64_t runs, uint64_t seed,
                               char** csv_out) {
  if (epr_status st = require(csv_out != nullptr, "csv_out")) return st;
  return guarded([&] {
    ProtocolConfig config{theta_a, theta_b, pa, pb, model_from_enum(model), runs, seed};
    std::vector<RunRecord> records = run_protocol(config);
    std::string csv = "run,axisA,axisB,a,b\n";
    for (size_t i = 0; i < records.size(); ++i) {
      const RunRecord& r = records[i];
      csv += std::to_string(i) + "," + (r.alice == Axis::z ? "Z" : "A") + "," +
             (r.bob == Axis::z ? "Z" : "B") + "," + std::to_string(int(r.a)) + "," +
             std::to_string(int(r.b)) + "\n";
    }
    *csv_out = dup_string(csv);
  });
}

/* -------- LHV -------- */

epr_status epr_measure_create(const double m[16], epr_measure** out) {
  if (epr_status st = require(m && out, "m/out")) return st;
  return guarded([&] {
    LhvMeasure measure;
    for (int i = 0; i < 16; ++i) measure.m[i] = m[i];
    *out = new epr_measure{measure};
  });
}

epr_status epr_measure_create_from_json(const char* json_text, epr_measure** out) {
  if (epr_status st = require(json_text && out, "json/out")) return st;
  return guarded([&] { *out = new epr_measure{measure_from_json(json_text)}; });
}

void epr_measure_free(epr_measure* measure) { delete measure; }

epr_status epr_measure_stats(const epr_measure* measure, double p_out[16]) {
  if (epr_status st = require(measure && p_out, "measure/p_out")) return st;
  return guarded([&] {
    FourCoinStats st = lhv_to_stats(measure->v);
    for (int i = 0; i < 16; ++i) p_out[i] = st.p[i];
  });
}

epr_status epr_measure_chsh(const epr_measure* measure, double* delta_out) {
  if (epr_status st = require(measure && delta_out, "measure/delta_out")) return st;
  return guarded([&] { *delta_out = chsh_from_measure(measure->v); });
}

epr_status epr_lhv_analyze(const epr_measure* measure, const epr_game* game,
                           char** json_out) {
  if (epr_status st = require(measure && json_out, "measure/json_out")) return st;
  return guarded([&] {
    const LhvMeasure& m = measure->v;
    FourCoinStats stats = lhv_to_stats(m);
    StatsValidation v = validate_stats(stats);
    json j{{"measure", m.m},
           {"sum", m.sum()},
           {"nonnegative", m.nonnegative()},
           {"chsh", chsh_from_measure(m)},
           {"stats",
            {{"p", stats.p},
             {"normalized", v.normalized},
             {"consistent", v.consistent},
             {"nonnegative", v.nonnegative}}}};
    if (v.consistent) {
      HeadProbs hp = extract_head_probs(stats);
      j["head_probs"] = {{"r", hp.r}, {"s", hp.s}, {"rp", hp.rp}, {"sp", hp.sp}};
    }
    try {
      PerfectCorrReduction red = perfect_corr_reduce(m);
      j["perfect_correlation"] = {{"r", red.r},
                                  {"rp", red.rp},
                                  {"s", red.s},
                                  {"sp", red.sp},
                                  {"p1_branch_identity", red.p1_branch_identity}};
      if (game) {
        GameEntries entries = entries_from_game(game->v);
        SplitInputs in = SplitInputs::from_measure(m);
        CorrelatedPayoffs cp = correlated_payoffs(entries, in);
        const char* pair_names[4] = {"s1s1", "s1s2", "s2s1", "s2s2"};
        json split;
        for (int i = 0; i < 4; ++i)
          split[pair_names[i]] = {
              {"alice",
               {{"full", cp.alice[i].full}, {"a", cp.alice[i].part_a}, {"b", cp.alice[i].part_b}}},
              {"bob",
               {{"full", cp.bob[i].full}, {"a", cp.bob[i].part_a}, {"b", cp.bob[i].part_b}}}};
        j["split_payoffs"] = split;
      }
    } catch (const PreconditionError& e) {
      j["perfect_correlation"] = {{"error", e.what()}};
    }
    if (game) {
      try {
        GameEntries entries = entries_from_game(game->v);
        PdNeAnalysis ne = pd_ne_analysis(entries, m);
        j["ne_analysis"] = {{"s2", ne.s2},
                            {"sp2", ne.sp2},
                            {"gain_a", ne.gain_a},
                            {"gain_b", ne.gain_b},
                            {"ne_exists", ne.ne_exists},
                            {"sum_inequality_holds", ne.sum_inequality_holds},
                            {"displaced", ne.displaced},
                            {"in_range", ne.in_range},
                            {"payoffs", {ne.payoffs.a, ne.payoffs.b}},
                            {"pd_class", entries.pd_class()}};
      } catch (const PreconditionError& e) {
        j["ne_analysis"] = {{"error", e.what()}};
      }
    }
    *json_out = dup_string(j.dump());
  });
}

epr_status epr_lhv_scan_m13_csv(const epr_game* game, double from, double to,
                                int steps, char** csv_out) {
  if (epr_status st = require(game && csv_out, "game/csv_out")) return st;
  return guarded([&] {
    if (steps < 1) throw std::invalid_argument("steps must be at least 1");
    GameEntries entries = entries_from_game(game->v);
    std::string csv =
        "x,s2,sp2,ne_exists,sum_inequality_holds,gain_a,gain_b,payoff_a,payoff_b\n";
    for (int i = 0; i <= steps; ++i) {
      double x = from + (to - from) * i / steps;
      PdNeAnalysis ne = pd_ne_analysis(entries, diagonal_measure_family(x));
      csv += fmt_double(x) + "," + fmt_double(ne.s2) + "," + fmt_double(ne.sp2) + "," +
             (ne.ne_exists ? "1" : "0") + "," + (ne.sum_inequality_holds ? "1" : "0") +
             "," + fmt_double(ne.gain_a) + "," + fmt_double(ne.gain_b) + "," +
             fmt_double(ne.payoffs.a) + "," + fmt_double(ne.payoffs.b) + "\n";
    }
    *csv_out = dup_string(csv);
  });
}

/* -------- quantum reference -------- */

epr_status epr_quantum_chsh_family(double c00, double c11, double xb, double zb,
                                   double* delta_out) {
  if (epr_status st = require(delta_out != nullptr, "delta_out")) return st;
  return guarded([&] {
    if (std::abs(xb * xb + zb * zb - 1.0) > 1e-9)
      throw std::domain_error("family directions need xb^2 + zb^2 = 1");
    *delta_out = chsh_quantum(c00, c11, ChshSettings::family(xb, zb));
  });
}

epr_status epr_quantum_chsh(double c00, double c11, const double a[3],
                            const double ap[3], const double b[3], const double bp[3],
                            double* delta_out) {
  if (epr_status st = require(a && ap && b && bp && delta_out, "directions/out"))
    return st;
  return guarded([&] {
    ChshSettings s{{a[0], a[1], a[2]},
                   {ap[0], ap[1], ap[2]},
                   {b[0], b[1], b[2]},
                   {bp[0], bp[1], bp[2]}};
    *delta_out = chsh_quantum(c00, c11, s);
  });
}

epr_status epr_quantum_eisert(double r, double s, double t, double u, double theta_a,
                              double phi_a, double theta_b, double phi_b, double gamma,
                              double* out_a, double* out_b) {
  if (epr_status st = require(out_a && out_b, "out")) return st;
  return guarded([&] {
    PayoffPair p = eisert_payoff(r, s, t, u, theta_a, phi_a, theta_b, phi_b, gamma);
    *out_a = p.a;
    *out_b = p.b;
  });
}

epr_status epr_quantum_meyer(double picard_flip_prob, double* out) {
  if (epr_status st = require(out != nullptr, "out")) return st;
  return guarded([&] { *out = meyer_q_win_probability(picard_flip_prob); });
}

epr_status epr_quantum_meyer_classical(double picard_flip_prob, double* out) {
  if (epr_status st = require(out != nullptr, "out")) return st;
  return guarded([&] { *out = meyer_classical_q_win_probability(picard_flip_prob); });
}

}  // extern "C"
