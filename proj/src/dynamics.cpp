#include "corpusgame/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace corpusgame {

std::strong_ordering operator<=>(const Equity& a, const Equity& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
  return compare(*a.value, *b.value);
}

std::string to_string(const Equity& e) { return e.is_infinite() ? "inf" : to_string(*e.value); }

Equity deviation_equity(const GameSpec& spec, const StrategyProfile& s, int i, const Document& d) {
  d.validate(spec.m);
  const ProfileOutcome before = evaluate(spec, s);
  const ProfileOutcome after = evaluate(spec, s.with(i, d));
  Equity e = Equity::infinity();
  for (int k = 0; k < spec.n; ++k) {
    if (k == i || !(after.utility[k] < before.utility[k])) continue;
    if (e.is_infinite() || after.utility[k] < *e.value) e.value = after.utility[k];
  }
  return e;
}

namespace {

int require_br_regime(const GameSpec& spec) {
  if (!spec.is_uniform()) throw std::invalid_argument("requires uniform thresholds");
  if (spec.n < 2 || spec.m < spec.n) throw std::invalid_argument("requires 2 <= n <= m");
  const int z1 = spec.m / spec.n;
  if (spec.threshold(0) < EpsRational(Rational(1, z1 + 1))) {
    throw std::invalid_argument("requires t >= 1/(floor(m/n)+1), got t = " + to_string(spec.threshold(0)));
  }
  return z1;
}

}  // namespace

Document algorithm1_best_response(const GameSpec& spec, const StrategyProfile& s, int i) {
  spec.validate(s);
  const int z1 = require_br_regime(spec);
  const EpsRational& t = spec.threshold(0);
  const std::vector<int> x = uncovered_queries(spec, s, i);
  const int free_count = static_cast<int>(x.size());

  Document d = Document::zeros(spec.m);
  for (int k = 0; k < std::min(free_count, z1 + 1); ++k) d[x[k]] = t;

  int to_add = 0;
  Rational eps = 0;
  if (free_count >= z1 - 1) {
    to_add = z1 + 1 - free_count;
  } else {
    to_add = z1 - free_count;
    eps = Rational(1, z1 * (z1 + 1));
    // past the peak the extra weight lowers the score
    if (spec.p < t.base() + eps) eps = std::max(Rational(0), Rational(spec.p - t.base()));
  }
  const EpsRational weight = t + EpsRational(eps);
  const bool want_solo = free_count < z1 - 1;

  for (int step = 0; step < to_add; ++step) {
    const ProfileOutcome out = evaluate(spec, s.with(i, d));
    auto targets_for = [&](bool restricted) {
      std::vector<int> targets;
      for (int k = 0; k < spec.n; ++k) {
        if (k != i && (!restricted || out.tie[k].size() <= 1) && !out.solo[k].empty()) targets.push_back(k);
      }
      std::stable_sort(targets.begin(), targets.end(), [&](int a, int b) { return out.wins(a) > out.wins(b); });
      return targets;
    };
    // argmax opponents in order; ties prefer one where the weight does its job
    auto pick = [&](const std::vector<int>& targets) -> std::optional<int> {
      for (int k : targets) {
        if (out.wins(k) < out.wins(targets.front())) break;
        for (int j : out.solo[k]) {
          Document trial = d;
          trial[j] = weight;
          const QueryOutcome q = evaluate(spec, s.with(i, trial)).queries[j];
          const bool in = std::find(q.winners.begin(), q.winners.end(), i) != q.winners.end();
          if (in && (want_solo ? q.winner_count() == 1 : q.winner_count() > 1)) return j;
        }
      }
      return std::nullopt;
    };
    std::vector<int> targets = targets_for(true);
    std::optional<int> chosen = targets.empty() ? std::nullopt : pick(targets);
    if (!chosen) {
      // nobody useful with at most one tie
      const std::vector<int> all = targets_for(false);
      if (all.empty()) throw std::runtime_error("algorithm 1: no opponent solo query to contest");
      chosen = pick(all);
      if (!chosen) chosen = out.solo[(targets.empty() ? all : targets).front()].front();
    }
    d[*chosen] = weight;
  }
  if (EpsRational(1) < d.total()) {
    throw std::runtime_error("algorithm 1: response exceeds the unit budget (" + to_string(d.total()) + ")");
  }
  return d;
}

std::string to_string(DeviationClass c) {
  switch (c) {
    case DeviationClass::Type1: return "type1";
    case DeviationClass::Type2: return "type2";
    case DeviationClass::Either: return "either";
  }
  return "either";
}

DeviationClass classify_deviation(const GameSpec& spec, const StrategyProfile& s, int i) {
  spec.validate(s);
  const int z1 = require_br_regime(spec);
  const auto free_count = static_cast<int>(uncovered_queries(spec, s, i).size());
  if (free_count < z1 - 1) return DeviationClass::Type1;
  if (free_count > z1 - 1) return DeviationClass::Type2;
  return DeviationClass::Either;
}

std::string to_string(const SchedulerPolicy& p) {
  switch (p.kind) {
    case SchedulerPolicy::Kind::RoundRobin: return "roundrobin";
    case SchedulerPolicy::Kind::SeededRandom: return "random:" + std::to_string(p.seed);
    case SchedulerPolicy::Kind::Scripted: return "script";
  }
  return "roundrobin";
}

SchedulerPolicy parse_scheduler(std::string_view text) {
  if (text == "roundrobin") return SchedulerPolicy::round_robin();
  if (text.starts_with("random:")) {
    const std::string digits(text.substr(7));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad scheduler seed: " + digits);
    }
    return SchedulerPolicy::seeded(std::stoull(digits));
  }
  throw std::invalid_argument("unknown scheduler: " + std::string(text));
}

std::string to_string(Responder r) {
  switch (r) {
    case Responder::FairOracle: return "fair-oracle";
    case Responder::Algorithm1: return "alg1";
    case Responder::Scripted: return "script";
  }
  return "fair-oracle";
}

Responder parse_responder(std::string_view name) {
  if (name == "fair-oracle") return Responder::FairOracle;
  if (name == "alg1") return Responder::Algorithm1;
  if (name == "script") return Responder::Scripted;
  throw std::invalid_argument("unknown responder: " + std::string(name));
}

std::string to_string(CycleMode c) { return c == CycleMode::Exact ? "exact" : "perm"; }

CycleMode parse_cycle_mode(std::string_view name) {
  if (name == "exact") return CycleMode::Exact;
  if (name == "perm") return CycleMode::Permutation;
  throw std::invalid_argument("unknown cycle mode: " + std::string(name));
}

std::string to_string(Terminal::Kind k) {
  switch (k) {
    case Terminal::Kind::Converged: return "converged";
    case Terminal::Kind::CycleDetected: return "cycle-detected";
    case Terminal::Kind::BudgetExhausted: return "budget-exhausted";
  }
  return "budget-exhausted";
}

std::vector<int> improving_players(const GameSpec& spec, const StrategyProfile& s) {
  const ProfileOutcome out = evaluate(spec, s);
  std::vector<int> who;
  for (int k = 0; k < spec.n; ++k) {
    if (out.utility[k] < best_response(spec, s, k).utility) who.push_back(k);
  }
  return who;
}

StrategyProfile canonical_form(const StrategyProfile& s) {
  const int n = s.players();
  if (n == 0) return s;
  const int m = s[0].size();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::optional<std::vector<std::vector<EpsRational>>> best;
  do {
    std::vector<std::vector<EpsRational>> columns(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      for (int i : order) columns[j].push_back(s[i][j]);
    }
    std::sort(columns.begin(), columns.end());
    if (!best || columns < *best) best = std::move(columns);
  } while (std::next_permutation(order.begin(), order.end()));

  StrategyProfile out;
  for (int i = 0; i < n; ++i) {
    Document d = Document::zeros(m);
    for (int j = 0; j < m; ++j) d[j] = (*best)[j][i];
    out.documents.push_back(std::move(d));
  }
  return out;
}

namespace {

// Shares of query j for every player when i bids w there; cached per (j, w).
class QueryShares {
 public:
  QueryShares(const GameSpec& spec, const StrategyProfile& s, int i) : spec_(spec), s_(s), i_(i), cache_(spec.m) {}

  const std::vector<Rational>& get(int j, const EpsRational& w) {
    for (const auto& [key, shares] : cache_[j]) {
      if (key == w) return shares;
    }
    GameSpec one = GameSpec::with_thresholds(spec_.n, 1, spec_.p, {spec_.threshold(j)});
    one.peak = spec_.peak;
    StrategyProfile col;
    for (int k = 0; k < spec_.n; ++k) {
      Document d = Document::zeros(1);
      d[0] = k == i_ ? w : s_[k][j];
      col.documents.push_back(std::move(d));
    }
    cache_[j].emplace_back(w, evaluate(one, col).utility);
    return cache_[j].back().second;
  }

 private:
  const GameSpec& spec_;
  const StrategyProfile& s_;
  int i_;
  std::vector<std::vector<std::pair<EpsRational, std::vector<Rational>>>> cache_;
};

Document fair_response(const GameSpec& spec, const StrategyProfile& s, int i, Equity& equity) {
  if (spec.m > 12) throw std::invalid_argument("fair oracle supports m <= 12");
  const auto candidates = optimal_responses(spec, s, i);
  const std::vector<Rational> before = evaluate(spec, s).utility;
  QueryShares shares(spec, s, i);
  std::vector<Rational> after(static_cast<std::size_t>(spec.n));
  const BestResponseResult* pick = nullptr;
  for (const auto& c : candidates) {
    std::fill(after.begin(), after.end(), Rational(0));
    for (int j = 0; j < spec.m; ++j) {
      const auto& q = shares.get(j, c.strategy[j]);
      for (int k = 0; k < spec.n; ++k) after[k] += q[k];
    }
    Equity e = Equity::infinity();
    for (int k = 0; k < spec.n; ++k) {
      if (k == i || !(after[k] < before[k])) continue;
      if (e.is_infinite() || after[k] < *e.value) e.value = after[k];
    }
    if (pick == nullptr || equity < e) {
      pick = &c;
      equity = e;
    }
  }
  return pick->strategy;
}

class Scheduler {
 public:
  explicit Scheduler(const SchedulerPolicy& policy) : policy_(policy), rng_(policy.seed) {}

  // Player to move at step l, or nullopt when the policy has nothing to offer.
  std::optional<int> next(int l, int n, const std::vector<int>& improvers) {
    switch (policy_.kind) {
      case SchedulerPolicy::Kind::RoundRobin: {
        for (int off = 0; off < n; ++off) {
          const int k = (cursor_ + off) % n;
          if (std::binary_search(improvers.begin(), improvers.end(), k)) {
            cursor_ = (k + 1) % n;
            return k;
          }
        }
        return std::nullopt;
      }
      case SchedulerPolicy::Kind::SeededRandom: {
        std::uniform_int_distribution<std::size_t> pick(0, improvers.size() - 1);
        return improvers[pick(rng_)];
      }
      case SchedulerPolicy::Kind::Scripted: {
        if (l >= static_cast<int>(policy_.script.size())) return std::nullopt;
        const int k = policy_.script[l];
        if (!std::binary_search(improvers.begin(), improvers.end(), k)) {
          throw std::invalid_argument("scripted player " + std::to_string(k) + " has no profitable deviation at step " +
                                      std::to_string(l));
        }
        return k;
      }
    }
    return std::nullopt;
  }

 private:
  const SchedulerPolicy& policy_;
  std::mt19937_64 rng_;
  int cursor_ = 0;
};

}  // namespace

DynamicsTrace run_dynamics(const GameSpec& spec, const StrategyProfile& s0, const DynamicsOptions& options) {
  spec.validate(s0);
  for (int k : options.scheduler.script) {
    if (k < 0 || k >= spec.n) throw std::invalid_argument("scripted player out of range: " + std::to_string(k));
  }
  DynamicsTrace trace;
  trace.initial = s0;
  StrategyProfile s = s0;
  Scheduler scheduler(options.scheduler);

  auto key_of = [&](const StrategyProfile& p) {
    return options.cycle_mode == CycleMode::Exact ? p : canonical_form(p);
  };
  std::map<StrategyProfile, int> visited;
  visited.emplace(key_of(s), 0);

  std::vector<int> improvers = improving_players(spec, s);
  for (int l = 0;; ++l) {
    if (improvers.empty()) {
      trace.terminal = {Terminal::Kind::Converged, l, 0, 0};
      break;
    }
    if (l >= options.max_steps) {
      trace.terminal = {Terminal::Kind::BudgetExhausted, l, 0, 0};
      break;
    }
    const std::optional<int> who = scheduler.next(l, spec.n, improvers);
    if (!who) {
      trace.terminal = {Terminal::Kind::BudgetExhausted, l, 0, 0};
      break;
    }
    const int i = *who;
    const Rational before = evaluate(spec, s).utility[i];

    DynamicsStep step;
    step.index = l;
    step.player = i;
    step.old_document = s[i];
    step.improvers = improvers;
    switch (options.responder) {
      case Responder::FairOracle: step.new_document = fair_response(spec, s, i, step.equity); break;
      case Responder::Algorithm1:
        step.new_document = algorithm1_best_response(spec, s, i);
        step.equity = deviation_equity(spec, s, i, step.new_document);
        break;
      case Responder::Scripted: {
        if (l >= static_cast<int>(options.scripted_documents.size())) {
          trace.terminal = {Terminal::Kind::BudgetExhausted, l, 0, 0};
          trace.final_profile = s;
          trace.final_improvers = improvers;
          return trace;
        }
        step.new_document = options.scripted_documents[l];
        spec.validate(s.with(i, step.new_document));
        if (options.scripted_best_only &&
            evaluate(spec, s.with(i, step.new_document)).utility[i] != best_response(spec, s, i).utility) {
          throw std::invalid_argument("scripted document at step " + std::to_string(l) + " is not a best response");
        }
        step.equity = deviation_equity(spec, s, i, step.new_document);
        break;
      }
    }
    s = s.with(i, step.new_document);
    const ProfileOutcome after = evaluate(spec, s);
    if (!(before < after.utility[i])) {
      throw std::runtime_error("responder did not improve player " + std::to_string(i) + " at step " +
                               std::to_string(l));
    }
    step.deviation_type = classify_pattern(spec, after.solo[i], after.tie[i]);
    step.utilities = after.utility;
    trace.steps.push_back(std::move(step));
    improvers = improving_players(spec, s);

    auto [it, fresh] = visited.emplace(key_of(s), l + 1);
    if (!fresh) {
      trace.terminal = {Terminal::Kind::CycleDetected, 0, it->second, l + 1 - it->second};
      break;
    }
  }
  trace.final_profile = s;
  trace.final_improvers = improvers;
  return trace;
}

bool ConvergenceReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.applicable || c.passed; });
}

ConvergenceReport check_convergence_bounds(const DynamicsTrace& trace, const GameSpec& spec) {
  const int n = spec.n;
  const int m = spec.m;
  const long long steps = static_cast<long long>(trace.steps.size());
  const bool converged = trace.terminal.kind == Terminal::Kind::Converged;
  ConvergenceReport report;
  if (n < 2 || m < n) return report;
  const long long z1 = m / n;

  BoundCheck divisible{"divisible: steps <= n", m % n == 0 && spec.p > Rational(1, z1 + 1), n, true};
  const bool general_regime =
      m % n != 0 && spec.is_uniform() && !(spec.threshold(0) < EpsRational(Rational(1, z1 + 1)));
  BoundCheck general{"general: steps <= n(n+3)/2", general_regime, n * (n + 3LL) / 2, true};
  BoundCheck linear{"general: steps <= n*floor(m/n)+n", general_regime && z1 < n, n * z1 + n, true};
  for (BoundCheck* c : {&divisible, &general, &linear}) {
    if (c->applicable) c->passed = converged && steps <= c->bound;
    report.checks.push_back(*c);
  }
  return report;
}

bool second_deviation_property_check(const DynamicsTrace& trace) {
  std::set<int> moved;
  for (std::size_t l = 0; l < trace.steps.size(); ++l) {
    const DynamicsStep& step = trace.steps[l];
    const bool repeat = moved.count(step.player) > 0;
    moved.insert(step.player);
    if (!repeat) continue;
    const std::vector<int>& after = l + 1 < trace.steps.size() ? trace.steps[l + 1].improvers : trace.final_improvers;
    for (int k : after) {
      if (!std::binary_search(step.improvers.begin(), step.improvers.end(), k)) return false;
    }
  }
  return true;
}

StrategyProfile random_profile(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("random_profile needs n, m >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> slot(0, m);
  const Rational unit(1, 2 * m);
  StrategyProfile s;
  for (int i = 0; i < n; ++i) {
    std::vector<int> counts(static_cast<std::size_t>(m) + 1, 0);
    for (int u = 0; u < 2 * m; ++u) ++counts[static_cast<std::size_t>(slot(rng))];
    Document d = Document::zeros(m);
    for (int j = 0; j < m; ++j) d.weights[static_cast<std::size_t>(j)] = EpsRational(unit * counts[static_cast<std::size_t>(j)]);
    s.documents.push_back(std::move(d));
  }
  return s;
}

}  // namespace corpusgame
