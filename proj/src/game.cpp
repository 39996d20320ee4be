#include "corpusgame/game.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace corpusgame {

std::string to_string(PeakFunction f) {
  switch (f) {
    case PeakFunction::Tent: return "tent";
    case PeakFunction::SquaredTent: return "squared-tent";
  }
  return "tent";
}

PeakFunction parse_peak_function(std::string_view name) {
  if (name == "tent") return PeakFunction::Tent;
  if (name == "squared-tent") return PeakFunction::SquaredTent;
  throw std::invalid_argument("unknown peak function: " + std::string(name));
}

EpsRational Document::total() const {
  EpsRational sum;
  for (const auto& w : weights) sum += w;
  return sum;
}

void Document::validate(int m) const {
  if (size() != m) {
    throw std::invalid_argument("document has " + std::to_string(size()) + " weights, expected " +
                                std::to_string(m));
  }
  for (int j = 0; j < m; ++j) {
    const auto& w = weights[static_cast<std::size_t>(j)];
    if (w < EpsRational(0) || EpsRational(1) < w) {
      throw std::invalid_argument("weight " + to_string(w) + " at query " + std::to_string(j) +
                                  " outside [0,1]");
    }
  }
  if (EpsRational(1) < total()) {
    throw std::invalid_argument("document weights sum to " + to_string(total()) + " > 1");
  }
}

StrategyProfile StrategyProfile::with(int i, Document d) const {
  StrategyProfile out = *this;
  out[i] = std::move(d);
  return out;
}

GameSpec GameSpec::uniform(int n, int m, Rational p, EpsRational t) {
  return with_thresholds(n, m, std::move(p), std::vector<EpsRational>(static_cast<std::size_t>(std::max(m, 0)), t));
}

GameSpec GameSpec::with_thresholds(int n, int m, Rational p, std::vector<EpsRational> t) {
  GameSpec g;
  g.n = n;
  g.m = m;
  g.p = std::move(p);
  g.thresholds = std::move(t);
  g.validate();
  return g;
}

bool GameSpec::is_uniform() const {
  return std::all_of(thresholds.begin(), thresholds.end(),
                     [&](const EpsRational& t) { return t == thresholds.front(); });
}

void GameSpec::validate() const {
  if (n < 1) throw std::invalid_argument("player count must be >= 1");
  if (m < 1) throw std::invalid_argument("query count must be >= 1");
  if (p <= 0 || p > 1) throw std::invalid_argument("peak value must lie in (0,1], got " + to_string(p));
  if (static_cast<int>(thresholds.size()) != m) {
    throw std::invalid_argument("threshold vector has " + std::to_string(thresholds.size()) +
                                " entries, expected " + std::to_string(m));
  }
  for (const auto& t : thresholds) {
    if (t < EpsRational(0) || EpsRational(p) < t) {
      throw std::invalid_argument("threshold " + to_string(t) + " outside [0, p]");
    }
  }
}

void GameSpec::validate(const StrategyProfile& s) const {
  validate();
  if (s.players() != n) {
    throw std::invalid_argument("profile has " + std::to_string(s.players()) + " documents, expected " +
                                std::to_string(n));
  }
  for (const auto& d : s.documents) d.validate(m);
}

EpsRational score(const EpsRational& weight, const Rational& p, PeakFunction f) {
  if (weight < EpsRational(0) || EpsRational(1) < weight) {
    throw std::domain_error("score: weight " + to_string(weight) + " outside [0,1]");
  }
  EpsRational tent;
  if (weight <= EpsRational(p)) {
    tent = weight / p;
  } else {
    tent = (EpsRational(1) - weight) / (Rational(1) - p);
  }
  if (f == PeakFunction::SquaredTent) {
    // first-order expansion: (a + bε)^2 = a^2 + 2ab ε
    return {tent.base() * tent.base(), 2 * tent.base() * tent.eps()};
  }
  return tent;
}

Rational ProfileOutcome::total_utility() const {
  Rational sum = 0;
  for (const auto& u : utility) sum += u;
  return sum;
}

bool ProfileOutcome::all_covered() const {
  return std::all_of(queries.begin(), queries.end(), [](const QueryOutcome& q) { return q.covered; });
}

namespace {

ProfileOutcome evaluate_impl(const GameSpec& spec, const StrategyProfile& s, std::optional<int> excluded) {
  spec.validate(s);
  ProfileOutcome out;
  out.queries.resize(static_cast<std::size_t>(spec.m));
  out.utility.assign(static_cast<std::size_t>(spec.n), Rational(0));
  out.solo.resize(static_cast<std::size_t>(spec.n));
  out.tie.resize(static_cast<std::size_t>(spec.n));

  std::vector<EpsRational> scores(static_cast<std::size_t>(spec.n));
  for (int j = 0; j < spec.m; ++j) {
    const EpsRational bar = score(spec.threshold(j), spec.p, spec.peak);
    std::optional<EpsRational> best_any;
    std::optional<EpsRational> best_weight_any;
    for (int i = 0; i < spec.n; ++i) {
      if (excluded && *excluded == i) continue;
      scores[i] = score(s[i][j], spec.p, spec.peak);
      if (!best_any || *best_any < scores[i]) {
        best_any = scores[i];
        best_weight_any = s[i][j];
      } else if (*best_any == scores[i] && s[i][j] < *best_weight_any) {
        best_weight_any = s[i][j];
      }
    }
    QueryOutcome& q = out.queries[static_cast<std::size_t>(j)];
    if (!best_any) {
      q.winning_value = EpsRational(0);
      continue;
    }
    q.winning_value = *best_weight_any;
    if (*best_any < bar) continue;
    q.covered = true;
    for (int i = 0; i < spec.n; ++i) {
      if (excluded && *excluded == i) continue;
      if (scores[i] == *best_any) q.winners.push_back(i);
    }
    const Rational share(1, q.winner_count());
    for (int i : q.winners) {
      out.utility[i] += share;
      (q.winner_count() == 1 ? out.solo : out.tie)[i].push_back(j);
    }
  }
  return out;
}

EpsRational abs(const EpsRational& v) { return v < EpsRational(0) ? -v : v; }

}  // namespace

ProfileOutcome evaluate(const GameSpec& spec, const StrategyProfile& s) { return evaluate_impl(spec, s, std::nullopt); }

ProfileOutcome evaluate_without(const GameSpec& spec, const StrategyProfile& s, int excluded) {
  if (excluded < 0 || excluded >= spec.n) throw std::out_of_range("player index out of range");
  return evaluate_impl(spec, s, excluded);
}

EpsRational social_welfare(const GameSpec& spec, const StrategyProfile& s) {
  const ProfileOutcome out = evaluate(spec, s);
  EpsRational worst;
  for (const auto& q : out.queries) worst = max(worst, abs(EpsRational(spec.p) - q.winning_value));
  return -worst;
}

std::vector<int> uncovered_queries(const GameSpec& spec, const StrategyProfile& s, int i) {
  const ProfileOutcome rest = evaluate_without(spec, s, i);
  std::vector<int> out;
  for (int j = 0; j < spec.m; ++j) {
    if (!rest.queries[static_cast<std::size_t>(j)].covered) out.push_back(j);
  }
  return out;
}

}  // namespace corpusgame
