#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "corpusgame/harness.hpp"
#include "corpusgame/io.hpp"

using namespace corpusgame;

namespace {

struct Globals {
  std::string emit;  // empty: json, except sweep (csv)
  std::uint64_t seed = 0;
  bool quiet = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational parse_rational_arg(const std::string& text) {
  try {
    return rational_from_json(json(text));
  } catch (const std::exception&) {
    throw UsageError("not a rational: " + text);
  }
}

// Writes to `out` when given, otherwise stdout (suppressed by --quiet).
void emit_text(const Globals& g, const std::string& out, const std::string& text) {
  if (!out.empty()) {
    write_text_file(out, text);
  } else if (!g.quiet) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string line;
  for (const auto& c : cells) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line + '\n';
}

std::string join(const std::vector<EpsRational>& v) {
  std::string s;
  for (const auto& x : v) {
    if (!s.empty()) s += ' ';
    s += to_string(x);
  }
  return s;
}

int cmd_thresholds(const Globals& g, int n, int m, const std::string& p_text, const std::string& mode_text,
                   const std::string& out) {
  const Rational p = parse_rational_arg(p_text);
  const EnrichmentMode mode = parse_enrichment_mode(mode_text);
  const ThresholdBound bound = mode == EnrichmentMode::Uniform ? uniform_min_threshold(n, m, p)
                                                               : general_min_threshold_norm(n, m, p);
  const std::vector<EpsRational> t = mode == EnrichmentMode::Uniform ? uniform_threshold_vector(n, m, p)
                                                                     : construct_threshold_vector(n, m, p);
  const auto docs = pack_thresholds_into_documents(t);
  if (g.emit == "csv") {
    std::string text = "n,m,p,mode,region,bound,strict,thresholds,norm,static_documents\n";
    text += csv_line({std::to_string(n), std::to_string(m), to_string(p), to_string(mode), to_string(bound.region),
                      to_string(bound.value), bound.strict ? "true" : "false", join(t), to_string(l1_norm(t)),
                      std::to_string(docs.size())});
    emit_text(g, out, text);
  } else {
    json j{{"n", n}, {"m", m}, {"p", to_json(p)}, {"mode", to_string(mode)}, {"bound", to_json(bound)},
           {"thresholds", json::array()}, {"norm", to_json(l1_norm(t))}, {"static_documents", json::array()}};
    for (const auto& x : t) j["thresholds"].push_back(to_json(x));
    for (const auto& d : docs) j["static_documents"].push_back(to_json(d));
    emit_text(g, out, j.dump(2));
  }
  return 0;
}

int cmd_construct(const Globals& g, int n, int m, const std::string& p_text, const std::string& mode_text,
                  const std::string& t_text, const std::string& out) {
  const Rational p = parse_rational_arg(p_text);
  const EnrichmentMode mode = parse_enrichment_mode(mode_text);
  std::vector<EpsRational> t;
  if (!t_text.empty()) {
    t.assign(static_cast<std::size_t>(m), EpsRational(parse_rational_arg(t_text)));
  } else {
    t = mode == EnrichmentMode::Uniform ? uniform_threshold_vector(n, m, p) : construct_threshold_vector(n, m, p);
  }
  const GameSpec spec = GameSpec::with_thresholds(n, m, p, t);
  const StrategyProfile s = construct_equilibrium(n, m, p, t, mode);
  if (g.emit == "csv") {
    std::string text = "player";
    for (int j = 0; j < m; ++j) text += ",q" + std::to_string(j + 1);
    text += '\n';
    for (int i = 0; i < n; ++i) {
      text += std::to_string(i);
      for (int j = 0; j < m; ++j) text += ',' + to_string(s[i][j]);
      text += '\n';
    }
    emit_text(g, out, text);
  } else {
    emit_text(g, out, json{{"game", to_json(spec)}, {"profile", to_json(s)}}.dump(2));
  }
  return 0;
}

// Accepts a bare game/profile object or one nested under "game"/"profile"
// (as written by `construct`).
json unwrap(const json& j, const char* key) { return j.contains(key) ? j.at(key) : j; }

int cmd_verify(const Globals& g, const std::string& game_path, const std::string& profile_path,
               const std::string& out) {
  const GameSpec spec = game_from_json(unwrap(read_json_file(game_path), "game"));
  const StrategyProfile s = profile_from_json(unwrap(read_json_file(profile_path), "profile"));
  const Verdict v = verify_equilibrium(spec, s);
  if (g.emit == "csv") {
    std::string text = "is_equilibrium,player,utility,best_utility,witness\n";
    if (v.is_equilibrium) {
      text += "true,,,,\n";
    } else {
      const int i = *v.player;
      text += csv_line({"false", std::to_string(i), to_string(evaluate(spec, s).utility[i]),
                        to_string(v.witness->utility), join(v.witness->strategy.weights)});
    }
    emit_text(g, out, text);
  } else {
    emit_text(g, out, to_json(v).dump(2));
  }
  return v.is_equilibrium ? 0 : 1;
}

DynamicsOptions parse_dynamics_options(const Globals& g, const std::string& scheduler, const std::string& responder,
                                       int max_steps, const std::string& cycle_mode) {
  DynamicsOptions o;
  o.max_steps = max_steps;
  o.responder = parse_responder(responder);
  o.cycle_mode = parse_cycle_mode(cycle_mode);
  if (scheduler == "random") {
    o.scheduler = SchedulerPolicy::seeded(g.seed);
  } else if (scheduler.starts_with("script:")) {
    const json script = read_json_file(scheduler.substr(7));
    const json& order = script.is_array() ? script : script.at("script");
    o.scheduler = SchedulerPolicy::scripted(order.get<std::vector<int>>());
    if (script.is_object()) o.scripted_best_only = !script.value("improvement_steps", false);
    if (script.is_object() && script.contains("responses")) {
      for (const auto& d : script.at("responses")) o.scripted_documents.push_back(document_from_json(d));
    }
  } else {
    o.scheduler = parse_scheduler(scheduler);
  }
  if (o.responder == Responder::Scripted && o.scripted_documents.empty()) {
    throw UsageError("--responder script needs a script file with \"responses\"");
  }
  return o;
}

int cmd_dynamics(const Globals& g, const std::string& game_path, const std::string& init_path,
                 const DynamicsOptions& o, const std::string& out) {
  const GameSpec spec = game_from_json(unwrap(read_json_file(game_path), "game"));
  const StrategyProfile s0 = init_path.empty() ? random_profile(spec.n, spec.m, g.seed)
                                               : profile_from_json(unwrap(unwrap(read_json_file(init_path), "initial"), "profile"));
  const DynamicsTrace trace = run_dynamics(spec, s0, o);
  if (g.emit == "csv") {
    std::string text = "step,player,old_document,new_document,deviation_type,deviation_equity,utilities\n";
    for (const auto& st : trace.steps) {
      std::string u;
      for (const auto& x : st.utilities) u += (u.empty() ? "" : " ") + to_string(x);
      text += csv_line({std::to_string(st.index), std::to_string(st.player), join(st.old_document.weights),
                        join(st.new_document.weights), to_string(st.deviation_type), to_string(st.equity), u});
    }
    emit_text(g, out, text);
  } else {
    emit_text(g, out, to_json(trace).dump(2));
  }
  if (!g.quiet && !out.empty()) {
    std::cerr << to_string(trace.terminal.kind) << " after " << trace.steps.size() << " steps\n";
  }
  return 0;
}

int cmd_sweep(const Globals& g, SweepConfig config, const std::string& p_grid, const std::string& out) {
  if (!p_grid.empty()) config.p_grid = parse_rational_list(p_grid);
  config.validate();
  const auto rows = run_sweep(config);
  emit_text(g, out, g.emit == "json" ? sweep_json(rows).dump(2) : sweep_csv(rows));
  return 0;
}

int cmd_replay(const Globals& g, const std::string& name, const std::string& fixtures, const std::string& out) {
  const ReplayResult r = replay_fixture(name, fixtures);
  if (g.emit == "csv") {
    std::string text = "fixture,passed,note\n";
    for (const auto& note : r.notes) text += csv_line({r.name, r.passed ? "true" : "false", "\"" + note + "\""});
    emit_text(g, out, text);
  } else {
    emit_text(g, out, json{{"fixture", r.name}, {"passed", r.passed}, {"notes", r.notes}, {"detail", r.detail}}.dump(2));
  }
  if (!g.quiet && !out.empty()) std::cerr << r.name << (r.passed ? ": passed\n" : ": FAILED\n");
  return r.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact thresholds, equilibria and best-response dynamics for corpus-enriched ranking games"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--emit", g.emit, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "Seed for random schedulers and random starts");
  app.add_flag("--quiet", g.quiet, "Suppress stdout");

  int n = 0, m = 0, max_steps = 100;
  std::string p, mode = "uniform", t, out, game, profile, init, scheduler = "roundrobin", responder = "fair-oracle",
                 cycle_mode = "exact", p_grid, fixture, fixtures_dir = "fixtures";
  SweepConfig sweep = SweepConfig::standard();

  auto* th = app.add_subcommand("thresholds", "Minimal threshold bound and vector");
  auto* co = app.add_subcommand("construct", "Build an equilibrium profile");
  for (auto* sub : {th, co}) {
    sub->add_option("--n", n, "Players")->required();
    sub->add_option("--m", m, "Queries")->required();
    sub->add_option("--p", p, "Peak, e.g. 1/2")->required();
    sub->add_option("--mode", mode, "uniform|general")->check(CLI::IsMember({"uniform", "general"}));
    sub->add_option("--out", out, "Write output to a file");
  }
  co->add_option("--t", t, "Common threshold (default: the minimal one)");

  auto* ve = app.add_subcommand("verify", "Check a profile for profitable deviations");
  ve->add_option("--game", game, "Game JSON")->required()->check(CLI::ExistingFile);
  ve->add_option("--profile", profile, "Profile JSON")->required()->check(CLI::ExistingFile);
  ve->add_option("--out", out, "Write output to a file");

  auto* dy = app.add_subcommand("dynamics", "Run best-response dynamics");
  dy->add_option("--game", game, "Game JSON")->required()->check(CLI::ExistingFile);
  dy->add_option("--init", init, "Initial profile JSON (default: random from --seed)")->check(CLI::ExistingFile);
  dy->add_option("--scheduler", scheduler, "roundrobin|random|random:SEED|script:FILE");
  dy->add_option("--responder", responder, "fair-oracle|alg1|script")
      ->check(CLI::IsMember({"fair-oracle", "alg1", "script"}));
  dy->add_option("--max-steps", max_steps, "Step budget")->check(CLI::NonNegativeNumber);
  dy->add_option("--cycle-mode", cycle_mode, "exact|perm")->check(CLI::IsMember({"exact", "perm"}));
  dy->add_option("--out", out, "Write the trace to a file");

  auto* sw = app.add_subcommand("sweep", "Threshold bounds over a grid of games");
  sw->add_option("--n-min", sweep.n_min);
  sw->add_option("--n-max", sweep.n_max);
  sw->add_option("--m-max", sweep.m_max);
  sw->add_option("--p-grid", p_grid, "Comma-separated peaks");
  sw->add_option("--out", out, "Write output to a file");

  auto* re = app.add_subcommand("replay", "Replay a stored scenario");
  re->add_option("fixture", fixture, "Fixture name")->required();
  re->add_option("--fixtures", fixtures_dir, "Fixture directory")->check(CLI::ExistingDirectory);
  re->add_option("--out", out, "Write output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*th) return cmd_thresholds(g, n, m, p, mode, out);
    if (*co) return cmd_construct(g, n, m, p, mode, t, out);
    if (*ve) return cmd_verify(g, game, profile, out);
    if (*dy) return cmd_dynamics(g, game, init, parse_dynamics_options(g, scheduler, responder, max_steps, cycle_mode), out);
    if (*sw) return cmd_sweep(g, sweep, p_grid, out);
    if (*re) return cmd_replay(g, fixture, fixtures_dir, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
