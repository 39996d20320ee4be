#include "corpusgame/harness.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>

namespace corpusgame {

SweepConfig SweepConfig::standard() {
  SweepConfig c;
  for (int k = 1; k <= 10; ++k) c.p_grid.emplace_back(k, 10);
  return c;
}

void SweepConfig::validate() const {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("empty n range");
  if (m_max <= n_min) throw std::invalid_argument("empty m range");
  if (p_grid.empty()) throw std::invalid_argument("empty p grid");
  for (const auto& p : p_grid) {
    if (p <= 0 || p > 1) throw std::invalid_argument("p outside (0,1]: " + to_string(p));
  }
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_rational(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

SweepRow sweep_cell(int n, int m, const Rational& p) {
  SweepRow row;
  row.n = n;
  row.m = m;
  row.p = p;
  row.uniform = uniform_min_threshold(n, m, p);
  row.general = general_min_threshold_norm(n, m, p);
  row.uniform_norm = materialize(row.uniform) * Rational(m);
  row.general_norm = materialize(row.general);
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<Rational> grid = config.p_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::future<std::vector<SweepRow>>> jobs;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    jobs.push_back(std::async(std::launch::async, [n, &config, &grid] {
      std::vector<SweepRow> rows;
      for (int m = n + 1; m <= config.m_max; ++m) {
        for (const auto& p : grid) rows.push_back(sweep_cell(n, m, p));
      }
      return rows;
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& j : jobs) {
    auto part = j.get();
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "n,m,p,p_decimal,uniform_region,uniform_t,uniform_t_strict,uniform_norm,uniform_norm_decimal,uniform_eps,"
        "general_region,general_norm,general_norm_decimal,general_eps\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.m << ',' << to_string(r.p) << ',' << to_decimal(r.p) << ',' << to_string(r.uniform.region)
       << ',' << to_string(r.uniform.value) << ',' << (r.uniform.strict ? "true" : "false") << ','
       << to_string(r.uniform_norm.base()) << ',' << to_decimal(r.uniform_norm.base()) << ','
       << (r.uniform_norm.eps() != 0 ? "true" : "false") << ',' << to_string(r.general.region) << ','
       << to_string(r.general_norm.base()) << ',' << to_decimal(r.general_norm.base()) << ','
       << (r.general_norm.eps() != 0 ? "true" : "false") << '\n';
  }
  return os.str();
}

json sweep_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back(json{{"n", r.n},
                       {"m", r.m},
                       {"p", to_json(r.p)},
                       {"uniform", to_json(r.uniform)},
                       {"uniform_norm", to_json(r.uniform_norm)},
                       {"general", to_json(r.general)},
                       {"general_norm", to_json(r.general_norm)}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixture replays

std::vector<std::string> fixture_names() {
  return {"cycle-2x3", "fairness-2x4", "perm-2x4", "general-cycle-2x6", "sw-2x5", "general-4x5"};
}

namespace {

struct Checker {
  ReplayResult& result;
  void operator()(bool ok, const std::string& what) {
    result.notes.push_back(std::string(ok ? "ok: " : "FAILED: ") + what);
    if (!ok) result.passed = false;
  }
};

DynamicsOptions options_from_json(const json& f) {
  DynamicsOptions o;
  const json& sched = f.at("scheduler");
  if (sched.contains("script")) {
    o.scheduler = SchedulerPolicy::scripted(sched.at("script").get<std::vector<int>>());
  } else {
    o.scheduler = parse_scheduler(sched.at("policy").get<std::string>());
  }
  o.responder = parse_responder(f.value("responder", "fair-oracle"));
  o.cycle_mode = parse_cycle_mode(f.value("cycle_mode", "exact"));
  o.max_steps = f.value("max_steps", 100);
  o.scripted_best_only = !f.value("improvement_steps", false);
  if (f.contains("responses")) {
    for (const auto& d : f.at("responses")) o.scripted_documents.push_back(document_from_json(d));
  }
  return o;
}

void replay_dynamics(const json& f, ReplayResult& r) {
  Checker check{r};
  const GameSpec spec = game_from_json(f.at("game"));
  const StrategyProfile s0 = profile_from_json(f.at("initial"));
  const DynamicsTrace trace = run_dynamics(spec, s0, options_from_json(f));
  r.detail = to_json(trace);
  const json& expect = f.at("expect");
  const std::string terminal = to_string(trace.terminal.kind);
  check(terminal == expect.at("terminal").get<std::string>(), "terminal " + terminal);
  const int within = expect.value("within", 100);
  check(static_cast<int>(trace.steps.size()) <= within,
        std::to_string(trace.steps.size()) + " steps (limit " + std::to_string(within) + ")");
  if (trace.terminal.kind == Terminal::Kind::CycleDetected) {
    r.notes.push_back("cycle: profile " + std::to_string(trace.terminal.first_repeat) + " recurs after " +
                      std::to_string(trace.terminal.period) + " steps");
  }
  if (expect.contains("first_document")) {
    const Document want = document_from_json(expect.at("first_document"));
    check(!trace.steps.empty() && trace.steps.front().new_document == want, "first response matches");
  }
}

void replay_equilibria(const json& f, ReplayResult& r) {
  Checker check{r};
  r.detail = json::array();
  for (const auto& c : f.at("cases")) {
    const GameSpec spec = game_from_json(c.at("game"));
    const StrategyProfile s = profile_from_json(c.at("profile"));
    const Verdict v = verify_equilibrium(spec, s);
    const bool want = c.at("expect_equilibrium").get<bool>();
    check(v.is_equilibrium == want, c.at("label").get<std::string>() + (v.is_equilibrium ? ": equilibrium" : ": not an equilibrium"));
    r.detail.push_back(json{{"label", c.at("label")}, {"verdict", to_json(v)}, {"norm", to_json(l1_norm(spec.thresholds))}});
  }
}

void replay_fairness(const json& f, ReplayResult& r) {
  Checker check{r};
  const GameSpec spec = game_from_json(f.at("game"));
  const StrategyProfile s0 = profile_from_json(f.at("initial"));
  const int i = f.at("player").get<int>();
  const Document unfair = document_from_json(f.at("unfair_document"));

  DynamicsOptions fair_run;
  fair_run.scheduler = SchedulerPolicy::scripted({i});
  fair_run.max_steps = 1;
  const DynamicsTrace fair_trace = run_dynamics(spec, s0, fair_run);
  check(fair_trace.steps.size() == 1, "fair step taken");
  if (fair_trace.steps.empty()) return;
  const DynamicsStep& fair = fair_trace.steps.front();

  const Rational best = best_response(spec, s0, i).utility;
  const StrategyProfile s_fair = s0.with(i, fair.new_document);
  const StrategyProfile s_unfair = s0.with(i, unfair);
  const Equity unfair_equity = deviation_equity(spec, s0, i, unfair);
  check(evaluate(spec, s_unfair).utility[i] == best, "unfair document is a best response");
  check(unfair_equity < fair.equity, "fair equity " + to_string(fair.equity) + " > unfair " + to_string(unfair_equity));
  check(verify_equilibrium(spec, s_fair).is_equilibrium, "fair step reaches an equilibrium");
  check(!verify_equilibrium(spec, s_unfair).is_equilibrium, "unfair step does not");
  check(canonical_form(s_unfair) == canonical_form(s0), "unfair step permutes the start");

  json detail{{"fair", to_json(fair_trace)}, {"unfair_document", to_json(unfair)}};
  if (f.contains("unfair_path")) {
    const json& path = f.at("unfair_path");
    DynamicsOptions o = options_from_json(path);
    const DynamicsTrace t = run_dynamics(spec, s0, o);
    const bool holds = second_deviation_property_check(t);
    r.notes.push_back(std::string("unfair path: ") + to_string(t.terminal.kind) + ", second-deviation property " +
                      (holds ? "holds" : "fails"));
    detail["unfair_path"] = to_json(t);
    detail["unfair_second_deviation_property"] = holds;
  }
  r.detail = detail;
}

void replay_social_welfare(const json& f, ReplayResult& r) {
  Checker check{r};
  r.detail = json::array();
  for (const auto& c : f.at("cases")) {
    const std::string label = c.at("label").get<std::string>();
    const GameSpec spec = game_from_json(c.at("game"));
    StrategyProfile s;
    if (c.contains("construct")) {
      s = construct_equilibrium(spec.n, spec.m, spec.p, spec.thresholds,
                                parse_enrichment_mode(c.at("construct").get<std::string>()));
    } else {
      s = profile_from_json(c.at("profile"));
    }
    const Verdict v = verify_equilibrium(spec, s);
    check(v.is_equilibrium == c.value("expect_equilibrium", true), label + ": equilibrium check");
    const ProfileOutcome out = evaluate(spec, s);
    json values = json::array();
    int uncovered = 0;
    for (const auto& q : out.queries) {
      values.push_back(to_json(q.winning_value));
      if (!q.covered) ++uncovered;
    }
    if (c.contains("expect_winning_values")) {
      bool same = true;
      const auto& want = c.at("expect_winning_values");
      for (int j = 0; j < spec.m; ++j) same = same && out.queries[j].winning_value == eps_rational_from_json(want[j]);
      check(same, label + ": winning values");
    }
    if (c.contains("expect_uncovered")) {
      check(uncovered == c.at("expect_uncovered").get<int>(),
            label + ": " + std::to_string(uncovered) + " queries without an original winner");
    }
    r.detail.push_back(json{{"label", label},
                            {"profile", to_json(s)},
                            {"winning_values", values},
                            {"social_welfare", to_json(social_welfare(spec, s))}});
  }
}

}  // namespace

ReplayResult replay_fixture(const std::string& name, const std::filesystem::path& fixtures_dir) {
  const auto names = fixture_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw std::invalid_argument("unknown fixture: " + name);
  }
  const json f = read_json_file(fixtures_dir / (name + ".json"));
  ReplayResult r;
  r.name = name;
  r.passed = true;
  const std::string kind = f.at("kind").get<std::string>();
  if (kind == "dynamics") {
    replay_dynamics(f, r);
  } else if (kind == "equilibria") {
    replay_equilibria(f, r);
  } else if (kind == "fairness") {
    replay_fairness(f, r);
  } else if (kind == "social-welfare") {
    replay_social_welfare(f, r);
  } else {
    throw std::invalid_argument("unknown fixture kind: " + kind);
  }
  return r;
}

}  // namespace corpusgame
