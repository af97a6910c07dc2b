// eprgame: two-player EPR-type quantum games from the command line.
// All computation goes through the shared library's C interface.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eprgames.h"

using nlohmann::json;

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

struct GlobalOpts {
  std::string out;
  std::string format;  // "json" or "csv"; empty = command default
  uint64_t seed = 0;
  bool quiet = false;
  bool degrees = false;
};

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  epr_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* status_name(epr_status st) {
  switch (st) {
    case EPR_OK: return "ok";
    case EPR_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case EPR_ERR_DOMAIN: return "domain";
    case EPR_ERR_PRECONDITION: return "precondition";
    case EPR_ERR_INSUFFICIENT_DATA: return "insufficient-data";
    case EPR_ERR_NO_SOLUTION: return "no-solution";
    case EPR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

// Domain failures exit with code 1 and a machine-readable record on stderr.
struct DomainFailure {
  epr_status status;
  std::string message;
};

void check(epr_status st) {
  if (st != EPR_OK) throw DomainFailure{st, epr_last_error()};
}

using GamePtr = std::unique_ptr<epr_game, decltype(&epr_game_free)>;
using GfunPtr = std::unique_ptr<epr_gfun, decltype(&epr_gfun_free)>;
using MeasurePtr = std::unique_ptr<epr_measure, decltype(&epr_measure_free)>;

GamePtr open_game(const std::string& name_or_path) {
  epr_game* g = nullptr;
  if (epr_game_create_named(name_or_path.c_str(), &g) == EPR_OK)
    return {g, &epr_game_free};
  check(epr_game_create_from_json(read_file(name_or_path).c_str(), &g));
  return {g, &epr_game_free};
}

bool looks_like_builtin_g(const std::string& s) {
  return s.size() >= 2 && s[0] == 'g' && s[1] >= '1' && s[1] <= '8' &&
         (s.size() == 2 || s[2] == '?');
}

GfunPtr open_gfun(const std::string& spec, std::optional<double> delta,
                  std::optional<double> eps) {
  epr_gfun* g = nullptr;
  if (looks_like_builtin_g(spec)) {
    std::string address = spec;
    if (address.find('?') == std::string::npos && (delta || eps)) {
      address += '?';
      if (delta) address += "delta=" + fmt_double(*delta);
      if (delta && eps) address += '&';
      if (eps) address += "eps=" + fmt_double(*eps);
    }
    check(epr_gfun_create(address.c_str(), &g));
  } else {
    check(epr_gfun_create_from_json(read_file(spec).c_str(), &g));
  }
  return {g, &epr_gfun_free};
}

epr_model model_by_name(const std::string& name) {
  if (name == "classical") return EPR_MODEL_CLASSICAL;
  if (name == "singlet") return EPR_MODEL_SINGLET;
  if (name == "mixture") return EPR_MODEL_MIXTURE;
  throw CLI::ValidationError("--model must be classical, singlet or mixture");
}

void emit(const GlobalOpts& opts, const std::string& content) {
  if (opts.out.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(opts.out, std::ios::binary);
  if (!f) throw CLI::ValidationError("cannot write file: " + opts.out);
  f << content;
  if (!opts.quiet) std::cerr << "wrote " << opts.out << "\n";
}

void emit_json(const GlobalOpts& opts, json j) {
  if (opts.format == "csv")
    throw CLI::ValidationError("this command emits JSON; --format csv is not supported");
  emit(opts, j.dump(2));
}

// Every artifact carries the resolved configuration for reproducibility.
std::string with_config_comment(const json& config, const std::string& csv) {
  return "# config: " + config.dump() + "\n" + csv;
}

// CSV-producing commands can be asked for a JSON view of the same table.
void emit_tabular(const GlobalOpts& opts, const json& config, const std::string& csv) {
  if (opts.format.empty() || opts.format == "csv") {
    emit(opts, with_config_comment(config, csv));
    return;
  }
  if (opts.format != "json")
    throw CLI::ValidationError("--format must be json or csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  json columns = json::array();
  std::istringstream head(line);
  for (std::string name; std::getline(head, name, ',');) columns.push_back(name);
  json rows = json::array();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json row = json::array();
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (...) {
        row.push_back(cell);
      }
    }
    rows.push_back(row);
  }
  emit(opts, json{{"config", config}, {"columns", columns}, {"rows", rows}}.dump(2));
}

double angle_in(const GlobalOpts& opts, double v) {
  return opts.degrees ? v * kDegToRad : v;
}

// --schema prints a field catalog instead of running the command.
struct SchemaFlag {
  bool requested = false;
  json description;
  bool handle(const GlobalOpts& opts) const {
    if (requested) emit_json(opts, description);
    return requested;
  }
};

void add_schema(CLI::App* cmd, SchemaFlag& flag, json description) {
  flag.description = std::move(description);
  cmd->add_flag("--schema", flag.requested, "describe the output fields and exit");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-player EPR-type quantum games: classical bimatrix games, "
               "correlation games, a Monte Carlo EPR protocol, the 16-subset "
               "signed-measure model, and exact two-qubit references."};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--out", opts.out, "write the artifact to this path instead of stdout");
  app.add_option("--format", opts.format, "output format override: json or csv");
  app.add_option("--seed", opts.seed, "random seed for sampled runs");
  app.add_flag("--quiet", opts.quiet, "suppress notes on stderr");
  app.add_flag("--deg", opts.degrees, "interpret angle arguments as degrees");

  // ---- game ----
  auto* game_cmd = app.add_subcommand("game", "classical 2x2 bimatrix games");
  game_cmd->require_subcommand(1);
  std::string game_ref = "pd1";

  auto* game_show = game_cmd->add_subcommand("show", "print the game table");
  game_show->add_option("--game", game_ref, "built-in name or JSON file");
  SchemaFlag game_show_schema;
  add_schema(game_show, game_show_schema,
             {{"game", "cells [[..]] and labels"}, {"config", "resolved inputs"}});

  auto* game_payoff = game_cmd->add_subcommand("payoff", "expected payoffs of a mixed profile");
  double pa = 0, pb = 0;
  game_payoff->add_option("--game", game_ref);
  game_payoff->add_option("--pa", pa, "row player's probability of move 1")->required();
  game_payoff->add_option("--pb", pb, "column player's probability of move 1")->required();
  SchemaFlag game_payoff_schema;
  add_schema(game_payoff, game_payoff_schema,
             {{"payoffs", "[payoff_a, payoff_b]"}, {"config", "resolved inputs"}});

  auto* game_pure = game_cmd->add_subcommand("pure-nash", "pure equilibria (weak; strict flagged)");
  game_pure->add_option("--game", game_ref);
  SchemaFlag game_pure_schema;
  add_schema(game_pure, game_pure_schema,
             {{"pure_nash", "cells {row, col, labels, strict}"}, {"config", "resolved inputs"}});

  auto* game_mixed = game_cmd->add_subcommand("mixed-nash", "closed-form 2x2 equilibria");
  game_mixed->add_option("--game", game_ref);
  SchemaFlag game_mixed_schema;
  add_schema(game_mixed, game_mixed_schema,
             {{"profiles", "[[pa, pb], ...]"},
              {"continuum", "a player is indifferent everywhere"},
              {"config", "resolved inputs"}});

  auto* game_pareto = game_cmd->add_subcommand("pareto", "Pareto optimality of a cell");
  int row = 0, col = 0;
  game_pareto->add_option("--game", game_ref);
  game_pareto->add_option("--row", row)->required();
  game_pareto->add_option("--col", col)->required();
  SchemaFlag game_pareto_schema;
  add_schema(game_pareto, game_pareto_schema,
             {{"pareto_optimal", "bool"}, {"config", "resolved inputs"}});

  // ---- gfun ----
  auto* gfun_cmd = app.add_subcommand("gfun", "strategy-to-probability maps g:[0,pi]->[0,1]");
  gfun_cmd->require_subcommand(1);
  std::string g_ref = "g1";
  std::optional<double> g_delta, g_eps;

  auto add_g_options = [&](CLI::App* cmd) {
    cmd->add_option("--g", g_ref, "built-in (g1..g8, optionally g3?delta=..&eps=..) or JSON file");
    cmd->add_option("--delta", g_delta, "delta parameter for parameterized built-ins");
    cmd->add_option("--eps", g_eps, "eps parameter for parameterized built-ins");
  };

  auto* gfun_plot = gfun_cmd->add_subcommand("plot", "CSV dump of g over [0,pi]");
  add_g_options(gfun_plot);
  int plot_steps = 200;
  gfun_plot->add_option("--steps", plot_steps, "number of sample points");
  SchemaFlag gfun_plot_schema;
  add_schema(gfun_plot, gfun_plot_schema,
             {{"csv", "theta,g columns; leading # config comment"}});

  auto* gfun_eval = gfun_cmd->add_subcommand("eval", "evaluate g at an angle");
  add_g_options(gfun_eval);
  double gfun_theta = 0;
  gfun_eval->add_option("--theta", gfun_theta, "angle in [0,pi]")->required();
  SchemaFlag gfun_eval_schema;
  add_schema(gfun_eval, gfun_eval_schema,
             {{"value", "g(theta)"}, {"config", "resolved inputs"}});

  auto* gfun_inverse = gfun_cmd->add_subcommand("inverse", "all angles with g(theta)=p");
  add_g_options(gfun_inverse);
  double gfun_p = 0;
  gfun_inverse->add_option("--p", gfun_p, "probability in [0,1]")->required();
  SchemaFlag gfun_inverse_schema;
  add_schema(gfun_inverse, gfun_inverse_schema,
             {{"angles", "preimage set"},
              {"non_unique", "a constant stretch was hit"},
              {"invertible", "g is injective"},
              {"config", "resolved inputs"}});

  auto* gfun_qt = gfun_cmd->add_subcommand("q-transform", "transformed probability under the singlet input");
  add_g_options(gfun_qt);
  gfun_qt->add_option("--p", gfun_p, "probability in [0,1]")->required();
  SchemaFlag gfun_qt_schema;
  add_schema(gfun_qt, gfun_qt_schema,
             {{"values", "Q_g(p) branch values"}, {"config", "resolved inputs"}});

  // ---- corr-game ----
  auto* corr_cmd = app.add_subcommand("corr-game", "correlation games in the EPR setting");
  corr_cmd->require_subcommand(1);
  std::string model_name = "singlet";

  auto* corr_solve = corr_cmd->add_subcommand("solve", "classical and transformed equilibria");
  corr_solve->add_option("--game", game_ref, "built-in name or JSON file");
  add_g_options(corr_solve);
  corr_solve->add_option("--model", model_name, "classical, singlet or mixture");
  int grid_n = 1001;
  corr_solve->add_option("--grid", grid_n, "grid resolution for confirmation");
  SchemaFlag corr_solve_schema;
  add_schema(corr_solve, corr_solve_schema,
             {{"classical_ne", "pure cells and mixed profiles"},
              {"quantum_ne", "first transformed equilibrium [pa, pb]"},
              {"quantum_ne_all", "all transformed equilibria"},
              {"payoffs", "per-equilibrium payoff sets"},
              {"grid", "confirmation sweep results"},
              {"config", "resolved inputs"}});

  auto* corr_sweep = corr_cmd->add_subcommand("sweep", "payoffs over a direction grid");
  corr_sweep->add_option("--game", game_ref);
  add_g_options(corr_sweep);
  corr_sweep->add_option("--model", model_name);
  int sweep_steps = 50;
  corr_sweep->add_option("--steps", sweep_steps, "grid points per axis");
  SchemaFlag corr_sweep_schema;
  add_schema(corr_sweep, corr_sweep_schema,
             {{"csv", "theta_a,theta_b,payoff_a,payoff_b rows"}});

  // ---- epr ----
  auto* epr_cmd = app.add_subcommand("epr", "Monte Carlo EPR protocol");
  epr_cmd->require_subcommand(1);

  auto* epr_sim = epr_cmd->add_subcommand("simulate", "sample runs and report the arbiter's digest");
  double theta_a = 0, theta_b = 0;
  double sim_pa = 0.5, sim_pb = 0.5;
  uint64_t runs = 100000;
  std::string dump_path, reward_game, reward_g;
  epr_sim->add_option("--model", model_name, "classical, singlet or mixture");
  epr_sim->add_option("--theta-a", theta_a, "Alice's alternative direction")->required();
  epr_sim->add_option("--theta-b", theta_b, "Bob's alternative direction")->required();
  epr_sim->add_option("--pa", sim_pa, "Alice's probability of the identity move (z axis)");
  epr_sim->add_option("--pb", sim_pb, "Bob's probability of the identity move");
  epr_sim->add_option("--runs", runs, "number of sampled runs");
  epr_sim->add_option("--dump", dump_path, "also write the record list as CSV here");
  epr_sim->add_option("--game", reward_game, "score the run against this game");
  epr_sim->add_option("--g", reward_g, "g-function for the reward");
  SchemaFlag epr_sim_schema;
  add_schema(epr_sim, epr_sim_schema,
             {{"runs", "record count"},
              {"p_hat", "estimated identity-move frequencies"},
              {"counts", "records per axis pair"},
              {"correlations", "per-pair estimates (null when the pair never occurred)"},
              {"reward", "payoffs from the estimated correlations (with --game/--g)"},
              {"config", "resolved inputs including the seed"}});

  // ---- lhv ----
  auto* lhv_cmd = app.add_subcommand("lhv", "signed-measure four-coin analysis");
  lhv_cmd->require_subcommand(1);

  auto* lhv_analyze = lhv_cmd->add_subcommand("analyze", "stats, CHSH and equilibrium analysis of a measure");
  std::string measure_path;
  lhv_analyze->add_option("--measure", measure_path, "JSON array of 16 weights")->required();
  lhv_analyze->add_option("--game", game_ref, "symmetric game giving the cell entries");
  SchemaFlag lhv_analyze_schema;
  add_schema(lhv_analyze, lhv_analyze_schema,
             {{"measure", "the 16 weights"},
              {"stats", "induced joint probabilities and validation flags"},
              {"chsh", "CHSH combination of the measure"},
              {"perfect_correlation", "reduction to (r, r', s, s')"},
              {"split_payoffs", "full = part_a + part_b per strategy pair"},
              {"ne_analysis", "displacement/existence of the (s2, s2') equilibrium"},
              {"config", "resolved inputs"}});

  auto* lhv_scan = lhv_cmd->add_subcommand("scan-m13", "sweep the diagonal family m4=1-2x, m13=m16=x");
  double scan_from = -0.3, scan_to = 0.1;
  int scan_steps = 100;
  lhv_scan->add_option("--from", scan_from, "first x value");
  lhv_scan->add_option("--to", scan_to, "last x value");
  lhv_scan->add_option("--steps", scan_steps, "number of sweep intervals");
  lhv_scan->add_option("--game", game_ref);
  SchemaFlag lhv_scan_schema;
  add_schema(lhv_scan, lhv_scan_schema,
             {{"csv", "x,s2,sp2,ne_exists,sum_inequality_holds,gain_a,gain_b,payoff_a,payoff_b"}});

  // ---- quantum ----
  auto* quantum_cmd = app.add_subcommand("quantum", "exact two-qubit reference calculations");
  quantum_cmd->require_subcommand(1);

  auto* q_chsh = quantum_cmd->add_subcommand("chsh", "CHSH on c00|00>+c11|11> with the x-z family");
  double c00 = 0, c11 = 0, xb = 0, zb = 0;
  q_chsh->add_option("--c00", c00)->required();
  q_chsh->add_option("--c11", c11)->required();
  q_chsh->add_option("--xb", xb)->required();
  q_chsh->add_option("--zb", zb)->required();
  SchemaFlag q_chsh_schema;
  add_schema(q_chsh, q_chsh_schema,
             {{"delta", "CHSH combination"}, {"config", "resolved inputs"}});

  auto* q_eisert = quantum_cmd->add_subcommand("eisert", "entangled 2x2 game payoffs");
  double gamma = 0, e_ta = 0, e_fa = 0, e_tb = 0, e_fb = 0;
  bool qq = false;
  q_eisert->add_option("--game", game_ref, "symmetric game supplying (r,s,t,u)");
  q_eisert->add_option("--gamma", gamma, "entanglement parameter in [0,pi/2]")->required();
  q_eisert->add_flag("--qq", qq, "both players play U(0,pi/2)");
  q_eisert->add_option("--theta-a", e_ta);
  q_eisert->add_option("--phi-a", e_fa);
  q_eisert->add_option("--theta-b", e_tb);
  q_eisert->add_option("--phi-b", e_fb);
  SchemaFlag q_eisert_schema;
  add_schema(q_eisert, q_eisert_schema,
             {{"payoffs", "[payoff_a, payoff_b]"}, {"config", "resolved inputs"}});

  auto* q_meyer = quantum_cmd->add_subcommand("meyer", "penny-flip winning probability");
  double flip_prob = 0.5;
  bool classical_q = false;
  q_meyer->add_option("--flip-prob", flip_prob, "Picard's flip probability");
  q_meyer->add_flag("--classical-q", classical_q, "restrict Q to classical flips");
  SchemaFlag q_meyer_schema;
  add_schema(q_meyer, q_meyer_schema,
             {{"q_win_probability", "heads probability at the end"},
              {"config", "resolved inputs"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    // ---- game ----
    if (game_show->parsed() || game_payoff->parsed() || game_pure->parsed() ||
        game_mixed->parsed() || game_pareto->parsed()) {
      GamePtr game = open_game(game_ref);
      json config{{"game", game_ref}};
      if (game_show->parsed()) {
        if (game_show_schema.handle(opts)) return 0;
        char* text = nullptr;
        check(epr_game_to_json(game.get(), &text));
        emit_json(opts, {{"config", config}, {"game", json::parse(take(text))}});
      } else if (game_payoff->parsed()) {
        if (game_payoff_schema.handle(opts)) return 0;
        double a = 0, b = 0;
        check(epr_game_payoff(game.get(), pa, pb, &a, &b));
        config["pa"] = pa;
        config["pb"] = pb;
        emit_json(opts, {{"config", config}, {"payoffs", {a, b}}});
      } else if (game_pure->parsed()) {
        if (game_pure_schema.handle(opts)) return 0;
        char* text = nullptr;
        check(epr_game_pure_nash(game.get(), &text));
        emit_json(opts, {{"config", config}, {"pure_nash", json::parse(take(text))}});
      } else if (game_mixed->parsed()) {
        if (game_mixed_schema.handle(opts)) return 0;
        char* text = nullptr;
        check(epr_game_mixed_nash(game.get(), &text));
        json res = json::parse(take(text));
        res["config"] = config;
        emit_json(opts, res);
      } else {
        if (game_pareto_schema.handle(opts)) return 0;
        int optimal = 0;
        check(epr_game_pareto_optimal(game.get(), row, col, &optimal));
        config["row"] = row;
        config["col"] = col;
        emit_json(opts, {{"config", config}, {"pareto_optimal", optimal != 0}});
      }
      return 0;
    }

    // ---- gfun ----
    if (gfun_plot->parsed() || gfun_eval->parsed() || gfun_inverse->parsed() ||
        gfun_qt->parsed()) {
      GfunPtr g = open_gfun(g_ref, g_delta, g_eps);
      json config{{"g", g_ref}};
      if (g_delta) config["delta"] = *g_delta;
      if (g_eps) config["eps"] = *g_eps;
      if (gfun_plot->parsed()) {
        if (gfun_plot_schema.handle(opts)) return 0;
        if (plot_steps < 2) throw CLI::ValidationError("--steps must be at least 2");
        config["steps"] = plot_steps;
        const double pi = 3.14159265358979323846;
        std::string csv = "theta,g\n";
        for (int i = 0; i < plot_steps; ++i) {
          double theta = pi * i / (plot_steps - 1);
          double v = 0;
          check(epr_gfun_eval(g.get(), theta, &v));
          csv += fmt_double(theta) + "," + fmt_double(v) + "\n";
        }
        emit_tabular(opts, config, csv);
      } else if (gfun_eval->parsed()) {
        if (gfun_eval_schema.handle(opts)) return 0;
        double theta = angle_in(opts, gfun_theta);
        double v = 0;
        check(epr_gfun_eval(g.get(), theta, &v));
        config["theta"] = theta;
        emit_json(opts, {{"config", config}, {"value", v}});
      } else if (gfun_inverse->parsed()) {
        if (gfun_inverse_schema.handle(opts)) return 0;
        double angles[16];
        int n = 0, non_unique = 0, invertible = 0;
        check(epr_gfun_inverse(g.get(), gfun_p, angles, 16, &n, &non_unique));
        check(epr_gfun_invertible(g.get(), &invertible));
        config["p"] = gfun_p;
        json arr = json::array();
        for (int i = 0; i < n && i < 16; ++i) arr.push_back(angles[i]);
        emit_json(opts, {{"config", config},
                         {"angles", arr},
                         {"non_unique", non_unique != 0},
                         {"invertible", invertible != 0}});
      } else {
        if (gfun_qt_schema.handle(opts)) return 0;
        double values[16];
        int n = 0;
        check(epr_gfun_q_transform(g.get(), gfun_p, values, 16, &n));
        config["p"] = gfun_p;
        json arr = json::array();
        for (int i = 0; i < n && i < 16; ++i) arr.push_back(values[i]);
        emit_json(opts, {{"config", config}, {"values", arr}});
      }
      return 0;
    }

    // ---- corr-game ----
    if (corr_solve->parsed()) {
      if (corr_solve_schema.handle(opts)) return 0;
      GamePtr game = open_game(game_ref);
      GfunPtr g = open_gfun(g_ref, g_delta, g_eps);
      char* text = nullptr;
      check(epr_corr_solve(game.get(), g.get(), model_by_name(model_name), grid_n, &text));
      json res = json::parse(take(text));
      json config{{"game", game_ref}, {"g", g_ref}, {"model", model_name}, {"grid", grid_n}};
      if (g_delta) config["delta"] = *g_delta;
      if (g_eps) config["eps"] = *g_eps;
      res["config"] = config;
      emit_json(opts, res);
      return 0;
    }
    if (corr_sweep->parsed()) {
      if (corr_sweep_schema.handle(opts)) return 0;
      GamePtr game = open_game(game_ref);
      GfunPtr g = open_gfun(g_ref, g_delta, g_eps);
      char* text = nullptr;
      check(epr_corr_sweep_csv(game.get(), g.get(), model_by_name(model_name),
                               sweep_steps, &text));
      json config{{"game", game_ref}, {"g", g_ref}, {"model", model_name},
                  {"steps", sweep_steps}};
      if (g_delta) config["delta"] = *g_delta;
      if (g_eps) config["eps"] = *g_eps;
      emit_tabular(opts, config, take(text));
      return 0;
    }

    // ---- epr ----
    if (epr_sim->parsed()) {
      if (epr_sim_schema.handle(opts)) return 0;
      double ta = angle_in(opts, theta_a), tb = angle_in(opts, theta_b);
      GamePtr game{nullptr, &epr_game_free};
      GfunPtr g{nullptr, &epr_gfun_free};
      if (!reward_game.empty() != !reward_g.empty())
        throw CLI::ValidationError("--game and --g must be given together");
      if (!reward_game.empty()) {
        game = open_game(reward_game);
        g = open_gfun(reward_g, g_delta, g_eps);
        // With a g attached, the protocol ties p to g(theta); flag mismatches.
        double ga = 0, gb = 0;
        if (epr_gfun_eval(g.get(), ta, &ga) == EPR_OK &&
            epr_gfun_eval(g.get(), tb, &gb) == EPR_OK && !opts.quiet &&
            (std::abs(ga - sim_pa) > 1e-9 || std::abs(gb - sim_pb) > 1e-9))
          std::cerr << "note: (pa, pb) differ from g(theta_a), g(theta_b) = ("
                    << fmt_double(ga) << ", " << fmt_double(gb) << ")\n";
      }
      char* text = nullptr;
      check(epr_sim_run(model_by_name(model_name), ta, tb, sim_pa, sim_pb, runs,
                        opts.seed, game.get(), g.get(), &text));
      json rep = json::parse(take(text));
      rep["config"] = json{{"model", model_name}, {"theta_a", ta},   {"theta_b", tb},
                           {"pa", sim_pa},        {"pb", sim_pb},    {"runs", runs},
                           {"seed", opts.seed}};
      if (!reward_game.empty()) {
        rep["config"]["game"] = reward_game;
        rep["config"]["g"] = reward_g;
      }
      if (!dump_path.empty()) {
        char* csv = nullptr;
        check(epr_sim_records_csv(model_by_name(model_name), ta, tb, sim_pa, sim_pb,
                                  runs, opts.seed, &csv));
        std::ofstream f(dump_path, std::ios::binary);
        if (!f) throw CLI::ValidationError("cannot write file: " + dump_path);
        f << take(csv);
        rep["config"]["dump"] = dump_path;
      }
      emit_json(opts, rep);
      return 0;
    }

    // ---- lhv ----
    if (lhv_analyze->parsed()) {
      if (lhv_analyze_schema.handle(opts)) return 0;
      epr_measure* m = nullptr;
      check(epr_measure_create_from_json(read_file(measure_path).c_str(), &m));
      MeasurePtr measure{m, &epr_measure_free};
      GamePtr game = open_game(game_ref);
      char* text = nullptr;
      check(epr_lhv_analyze(measure.get(), game.get(), &text));
      json res = json::parse(take(text));
      res["config"] = json{{"measure", measure_path}, {"game", game_ref}};
      emit_json(opts, res);
      return 0;
    }
    if (lhv_scan->parsed()) {
      if (lhv_scan_schema.handle(opts)) return 0;
      GamePtr game = open_game(game_ref);
      char* text = nullptr;
      check(epr_lhv_scan_m13_csv(game.get(), scan_from, scan_to, scan_steps, &text));
      json config{{"game", game_ref}, {"from", scan_from}, {"to", scan_to},
                  {"steps", scan_steps}};
      emit_tabular(opts, config, take(text));
      return 0;
    }

    // ---- quantum ----
    if (q_chsh->parsed()) {
      if (q_chsh_schema.handle(opts)) return 0;
      double delta = 0;
      check(epr_quantum_chsh_family(c00, c11, xb, zb, &delta));
      emit_json(opts, {{"config", {{"c00", c00}, {"c11", c11}, {"xb", xb}, {"zb", zb}}},
                       {"delta", delta}});
      return 0;
    }
    if (q_eisert->parsed()) {
      if (q_eisert_schema.handle(opts)) return 0;
      GamePtr game = open_game(game_ref);
      char* text = nullptr;
      check(epr_game_to_json(game.get(), &text));
      json gj = json::parse(take(text));
      double r = gj["cells"][0][0][0], s = gj["cells"][0][1][0];
      double t = gj["cells"][1][0][0], u = gj["cells"][1][1][0];
      double ta = e_ta, fa = e_fa, tb = e_tb, fb = e_fb;
      if (qq) {
        ta = tb = 0;
        fa = fb = 3.14159265358979323846 / 2;
      } else {
        ta = angle_in(opts, ta);
        tb = angle_in(opts, tb);
      }
      double payoff_a = 0, payoff_b = 0;
      check(epr_quantum_eisert(r, s, t, u, ta, fa, tb, fb, gamma, &payoff_a, &payoff_b));
      emit_json(opts, {{"config",
                        {{"game", game_ref}, {"gamma", gamma}, {"theta_a", ta},
                         {"phi_a", fa}, {"theta_b", tb}, {"phi_b", fb}}},
                       {"payoffs", {payoff_a, payoff_b}}});
      return 0;
    }
    if (q_meyer->parsed()) {
      if (q_meyer_schema.handle(opts)) return 0;
      double win = 0;
      check(classical_q ? epr_quantum_meyer_classical(flip_prob, &win)
                        : epr_quantum_meyer(flip_prob, &win));
      emit_json(opts, {{"config", {{"flip_prob", flip_prob}, {"classical_q", classical_q}}},
                       {"q_win_probability", win}});
      return 0;
    }
  } catch (const DomainFailure& e) {
    std::cerr << json{{"error", {{"code", status_name(e.status)}, {"message", e.message}}}}
                     .dump()
              << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  return 0;
}
