#include "corpusgame/equilibrium.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace corpusgame {

std::string to_string(EnrichmentMode mode) { return mode == EnrichmentMode::Uniform ? "uniform" : "general"; }

EnrichmentMode parse_enrichment_mode(std::string_view name) {
  if (name == "uniform") return EnrichmentMode::Uniform;
  if (name == "general") return EnrichmentMode::General;
  throw std::invalid_argument("unknown mode: " + std::string(name));
}

std::string to_string(DeviationType t) {
  switch (t) {
    case DeviationType::None: return "none";
    case DeviationType::Type1: return "type1";
    case DeviationType::Type2: return "type2";
  }
  return "none";
}

// ---------------------------------------------------------------------------
// Construction

namespace {

Arrangement peak_value_arrangement(int n, int m, const Rational& p) {
  const long long k = floor_int(Rational(1) / p);
  if (k >= m) return dealt_arrangement(n, m, m, EpsRational(p));
  if (n * k >= 2LL * m) return dealt_arrangement(n, m, static_cast<int>(k), EpsRational(p));
  const std::vector<int> beta = balanced_counts(n, static_cast<int>(2 * m - n * k));
  std::vector<int> ties(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) ties[i] = static_cast<int>(k) - beta[i];
  return pairwise_arrangement(m, beta, ties, EpsRational(p));
}

bool meets(const ThresholdBound& bound, const EpsRational& value) {
  return bound.strict ? EpsRational(bound.value) < value : EpsRational(bound.value) <= value;
}

// Unenriched solo winners keep their query with an infinitesimal weight, so
// leftover budget from another player is parked there to price the query.
void park_leftover_on_solo_queries(const Arrangement& a, StrategyProfile& s) {
  std::vector<int> owners;
  std::vector<int> queries;
  for (int i = 0; i < a.n; ++i) {
    for (int j : a.solo[i]) {
      owners.push_back(i);
      queries.push_back(j);
    }
  }
  if (owners.empty() || a.n < 2) return;
  for (std::size_t q = 0; q < owners.size(); ++q) {
    const int defender = owners.size() >= 2 ? owners[(q + 1) % owners.size()] : (owners[q] + 1) % a.n;
    const EpsRational leftover = EpsRational(1) - s[defender].total();
    if (EpsRational(0) < leftover) s[defender][queries[q]] += leftover;
  }
}

}  // namespace

Arrangement equilibrium_arrangement(int n, int m, const Rational& p, EnrichmentMode mode) {
  if (n >= m) throw std::invalid_argument("construct_equilibrium requires n < m");
  if (n == 1) {
    return dealt_arrangement(1, m, m, EpsRational(std::min(p, Rational(1, m))));
  }
  const ThresholdBound bound =
      mode == EnrichmentMode::Uniform ? uniform_min_threshold(n, m, p) : general_min_threshold_norm(n, m, p);
  switch (bound.region) {
    case Region::NoEnrichmentNeeded:
    case Region::MediumPeak: return peak_value_arrangement(n, m, p);
    case Region::LargePeakDivisible:
    case Region::LargePeakNonDivisible: return large_peak_arrangement(n, m, LargePeakPattern::Uniform);
    case Region::GeneralModZero:
    case Region::GeneralModMiddle:
    case Region::GeneralModNMinus1: return large_peak_arrangement(n, m, LargePeakPattern::General);
  }
  throw std::logic_error("unhandled region");
}

StrategyProfile construct_equilibrium(int n, int m, const Rational& p, const std::vector<EpsRational>& thresholds,
                                      EnrichmentMode mode) {
  if (n >= m) throw std::invalid_argument("construct_equilibrium requires n < m");
  const GameSpec spec = GameSpec::with_thresholds(n, m, p, thresholds);

  if (n > 1) {
    if (mode == EnrichmentMode::Uniform) {
      if (!spec.is_uniform()) throw std::invalid_argument("uniform mode requires equal thresholds");
      const ThresholdBound bound = uniform_min_threshold(n, m, p);
      if (!meets(bound, thresholds.front())) {
        throw std::invalid_argument("threshold " + to_string(thresholds.front()) + " below bound " +
                                    to_string(bound.value) + (bound.strict ? " (strict)" : ""));
      }
    } else {
      const ThresholdBound bound = general_min_threshold_norm(n, m, p);
      if (!meets(bound, l1_norm(thresholds))) {
        throw std::invalid_argument("threshold norm " + to_string(l1_norm(thresholds)) + " below bound " +
                                    to_string(bound.value) + (bound.strict ? " (strict)" : ""));
      }
    }
  }

  const Arrangement a = equilibrium_arrangement(n, m, p, mode);
  for (int j = 0; j < m; ++j) {
    if (a.value[j] < thresholds[j]) {
      throw std::invalid_argument("threshold at query " + std::to_string(j) + " exceeds the winning value " +
                                  to_string(a.value[j]));
    }
  }
  StrategyProfile s = a.profile();
  if (n > 1 && uniform_min_threshold(n, m, p).region == Region::NoEnrichmentNeeded) {
    park_leftover_on_solo_queries(a, s);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Best response

namespace {

// Lexicographic (value, number of positive infinitesimal increments).
struct Cost {
  EpsRational value;
  int bumps = 0;

  Cost& operator+=(const Cost& o) {
    value += o.value;
    bumps += o.bumps;
    return *this;
  }
  friend Cost operator+(Cost a, const Cost& b) { return a += b; }
  friend Cost operator-(Cost a, const Cost& b) {
    a.value -= b.value;
    a.bumps -= b.bumps;
    return a;
  }
  friend bool operator==(const Cost&, const Cost&) = default;
  friend std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
    if (auto c = a.value <=> b.value; c != 0) return c;
    return a.bumps <=> b.bumps;
  }
};

const Cost kBudget{EpsRational(1), 0};

Cost cost_of(const QueryOption& o) { return {o.cost, o.strictly_above ? 1 : 0}; }

struct FrontierPoint {
  Cost cost;
  Rational gain;
};
using Frontier = std::vector<FrontierPoint>;

Frontier prune(Frontier f) {
  std::sort(f.begin(), f.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return b.gain < a.gain;
  });
  Frontier out;
  for (auto& pt : f) {
    if (out.empty() || out.back().gain < pt.gain) out.push_back(std::move(pt));
  }
  return out;
}

Rational best_within(const Frontier& f, const Cost& room) {
  // costs ascending, gains ascending
  auto it = std::upper_bound(f.begin(), f.end(), room,
                             [](const Cost& r, const FrontierPoint& pt) { return r < pt.cost; });
  if (it == f.begin()) return Rational(-1);
  return std::prev(it)->gain;
}

class ResponseSearch {
 public:
  ResponseSearch(const std::vector<std::vector<QueryOption>>& options) : options_(options) {
    const std::size_t m = options.size();
    suffix_.resize(m + 1);
    suffix_[m] = {FrontierPoint{Cost{}, Rational(0)}};
    for (std::size_t k = m; k-- > 0;) {
      Frontier next;
      for (const auto& o : options[k]) {
        const Cost c = cost_of(o);
        for (const auto& pt : suffix_[k + 1]) {
          Cost total = pt.cost + c;
          if (total <= kBudget) next.push_back({std::move(total), pt.gain + o.gain});
        }
      }
      suffix_[k] = prune(std::move(next));
    }
    target_ = best_within(suffix_[0], kBudget);
  }

  const Rational& optimum() const { return target_; }

  // Action vectors (option index per query) reaching the optimum.
  std::vector<std::vector<int>> solutions(bool all) {
    std::vector<std::vector<int>> out;
    std::vector<int> chosen(options_.size(), 0);
    std::function<bool(std::size_t, const Cost&, const Rational&)> dfs = [&](std::size_t k, const Cost& spent,
                                                                              const Rational& gained) -> bool {
      if (k == options_.size()) {
        if (gained == target_) {
          out.push_back(chosen);
          return !all;
        }
        return false;
      }
      for (std::size_t a = 0; a < options_[k].size(); ++a) {
        const QueryOption& o = options_[k][a];
        const Cost next = spent + cost_of(o);
        if (kBudget < next) continue;
        const Rational reach = best_within(suffix_[k + 1], kBudget - next);
        if (reach < 0 || gained + o.gain + reach < target_) continue;
        chosen[k] = static_cast<int>(a);
        if (dfs(k + 1, next, gained + o.gain)) return true;
      }
      return false;
    };
    dfs(0, Cost{}, Rational(0));
    return out;
  }

 private:
  const std::vector<std::vector<QueryOption>>& options_;
  std::vector<Frontier> suffix_;
  Rational target_;
};

Document document_for(const GameSpec& spec, const std::vector<std::vector<QueryOption>>& options,
                      const std::vector<int>& chosen) {
  Document d = Document::zeros(spec.m);
  EpsRational spent;
  int bumps = 0;
  Rational bump(1);
  for (int j = 0; j < spec.m; ++j) {
    const QueryOption& o = options[j][chosen[j]];
    spent += o.cost;
    if (o.strictly_above) {
      ++bumps;
      // stay at or below the peak
      if (o.cost.base() == spec.p) bump = std::min(bump, Rational(-o.cost.eps()));
    }
  }
  if (bumps > 0 && spent.base() == 1) bump = std::min(bump, Rational(-spent.eps() / bumps));
  for (int j = 0; j < spec.m; ++j) {
    const QueryOption& o = options[j][chosen[j]];
    if (o.action == QueryAction::Skip) continue;
    d[j] = o.strictly_above ? o.cost + EpsRational::epsilon(bump) : o.cost;
  }
  return d;
}

BestResponseResult finish(const GameSpec& spec, const StrategyProfile& s, int i, Document d,
                          const Rational& predicted) {
  const ProfileOutcome out = evaluate(spec, s.with(i, d));
  if (out.utility[i] != predicted) {
    throw std::logic_error("best response: predicted utility " + to_string(predicted) + " but got " +
                           to_string(out.utility[i]));
  }
  BestResponseResult r;
  r.strategy = std::move(d);
  r.utility = out.utility[i];
  r.solo = out.solo[i];
  r.tie = out.tie[i];
  r.deviation_type = classify_pattern(spec, r.solo, r.tie);
  return r;
}

}  // namespace

std::vector<std::vector<QueryOption>> query_options(const GameSpec& spec, const StrategyProfile& s, int i) {
  if (spec.peak != PeakFunction::Tent) throw std::invalid_argument("best response requires tent scoring");
  const ProfileOutcome rest = evaluate_without(spec, s, i);
  std::vector<std::vector<QueryOption>> options(static_cast<std::size_t>(spec.m));
  for (int j = 0; j < spec.m; ++j) {
    auto& opts = options[j];
    opts.push_back({QueryAction::Skip, EpsRational(0), false, Rational(0)});
    const QueryOutcome& q = rest.queries[j];
    if (!q.covered) {
      opts.push_back({QueryAction::Solo, spec.threshold(j), false, Rational(1)});
      continue;
    }
    const EpsRational top = score(q.winning_value, spec.p, spec.peak);
    const EpsRational match = top * spec.p;  // cheapest weight reaching the top score
    opts.push_back({QueryAction::Tie, match, false, Rational(1, q.winner_count() + 1)});
    if (top < EpsRational(1)) opts.push_back({QueryAction::Solo, match, true, Rational(1)});
  }
  return options;
}

DeviationType classify_pattern(const GameSpec& spec, const std::vector<int>& solo, const std::vector<int>& tie) {
  const auto z1 = static_cast<std::size_t>(spec.m / spec.n);
  if (tie.empty() && solo.size() == z1) return DeviationType::Type1;
  if (solo.size() + tie.size() == z1 + 1 && solo.size() + 1 >= z1) return DeviationType::Type2;
  return DeviationType::None;
}

BestResponseResult best_response(const GameSpec& spec, const StrategyProfile& s, int i, SearchMode mode) {
  spec.validate(s);
  if (i < 0 || i >= spec.n) throw std::out_of_range("player index out of range");
  const auto options = query_options(spec, s, i);

  if (mode == SearchMode::Frontier) {
    ResponseSearch search(options);
    const auto sol = search.solutions(false);
    return finish(spec, s, i, document_for(spec, options, sol.front()), search.optimum());
  }

  if (spec.m > 16) throw std::invalid_argument("exhaustive best response supports m <= 16");
  std::vector<int> chosen(static_cast<std::size_t>(spec.m), 0);
  std::vector<int> best_choice = chosen;
  Rational best_gain = 0;
  std::function<void(int, const Cost&, const Rational&)> walk = [&](int j, const Cost& spent, const Rational& g) {
    if (j == spec.m) {
      if (best_gain < g) {
        best_gain = g;
        best_choice = chosen;
      }
      return;
    }
    for (std::size_t a = 0; a < options[j].size(); ++a) {
      const Cost next = spent + cost_of(options[j][a]);
      if (kBudget < next) continue;
      chosen[j] = static_cast<int>(a);
      walk(j + 1, next, g + options[j][a].gain);
    }
    chosen[j] = 0;
  };
  walk(0, Cost{}, Rational(0));
  return finish(spec, s, i, document_for(spec, options, best_choice), best_gain);
}

std::vector<BestResponseResult> optimal_responses(const GameSpec& spec, const StrategyProfile& s, int i) {
  spec.validate(s);
  if (i < 0 || i >= spec.n) throw std::out_of_range("player index out of range");
  const auto options = query_options(spec, s, i);
  ResponseSearch search(options);
  std::vector<BestResponseResult> out;
  for (const auto& sol : search.solutions(true)) {
    Document d = document_for(spec, options, sol);
    if (out.empty()) {
      out.push_back(finish(spec, s, i, std::move(d), search.optimum()));
      continue;
    }
    // the first one was checked by evaluation; the rest read the actions off
    BestResponseResult r;
    r.strategy = std::move(d);
    r.utility = search.optimum();
    for (int j = 0; j < spec.m; ++j) {
      const QueryAction a = options[j][sol[j]].action;
      if (a == QueryAction::Solo) r.solo.push_back(j);
      if (a == QueryAction::Tie) r.tie.push_back(j);
    }
    r.deviation_type = classify_pattern(spec, r.solo, r.tie);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const BestResponseResult& a, const BestResponseResult& b) { return a.strategy < b.strategy; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const BestResponseResult& a, const BestResponseResult& b) {
                          return a.strategy == b.strategy;
                        }),
            out.end());
  return out;
}

Verdict verify_equilibrium(const GameSpec& spec, const StrategyProfile& s) {
  const ProfileOutcome out = evaluate(spec, s);
  for (int i = 0; i < spec.n; ++i) {
    BestResponseResult br = best_response(spec, s, i);
    if (out.utility[i] < br.utility) return {false, i, std::move(br)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Grid search

std::vector<Document> grid_documents(int m, int granularity) {
  std::vector<Document> out;
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == m) {
      Document d = Document::zeros(m);
      for (int q = 0; q < m; ++q) d[q] = EpsRational(Rational(a[q], granularity));
      out.push_back(std::move(d));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[j] = v;
      rec(j + 1, left - v);
    }
  };
  rec(0, granularity);
  return out;
}

namespace {

std::vector<std::vector<int>> grid_levels(int m, int granularity) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == m) {
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[j] = v;
      rec(j + 1, left - v);
    }
  };
  rec(0, granularity);
  return out;
}

}  // namespace

std::vector<StrategyProfile> grid_search_equilibria(const GameSpec& spec, int granularity) {
  spec.validate();
  if (spec.n > 3 || spec.m > 6 || granularity < 1 || granularity > 12) {
    throw std::invalid_argument("grid search limited to n <= 3, m <= 6, 1 <= g <= 12");
  }
  const int n = spec.n;
  const int m = spec.m;
  const auto docs = grid_levels(m, granularity);
  const auto count = static_cast<long long>(docs.size());
  long long profiles = 1;
  for (int i = 0; i < n; ++i) profiles = profiles * (count + i) / (i + 1);
  if (profiles * count > 4'000'000'000LL) {
    throw std::invalid_argument("grid too large: " + std::to_string(profiles) + " profiles");
  }

  // Integer score ranks per weight level; -1 marks "below threshold".
  std::vector<EpsRational> level_scores;
  for (int v = 0; v <= granularity; ++v) level_scores.push_back(score(Rational(v, granularity), spec.p, spec.peak));
  std::vector<EpsRational> sorted = level_scores;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::vector<int>> rank(static_cast<std::size_t>(m), std::vector<int>(granularity + 1));
  for (int j = 0; j < m; ++j) {
    const EpsRational bar = score(spec.threshold(j), spec.p, spec.peak);
    for (int v = 0; v <= granularity; ++v) {
      rank[j][v] = level_scores[v] < bar
                       ? -1
                       : static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), level_scores[v]) -
                                          sorted.begin());
    }
  }
  long long lcm = 1;
  for (int h = 2; h <= n; ++h) lcm = std::lcm(lcm, static_cast<long long>(h));

  // Utility of docs[idx[0]] against the others, in units of 1/lcm.
  auto utility_of_first = [&](const std::vector<std::size_t>& idx) {
    long long u = 0;
    for (int j = 0; j < m; ++j) {
      const int mine = rank[j][docs[idx[0]][j]];
      if (mine < 0) continue;
      int h = 1;
      bool top = true;
      for (std::size_t k = 1; k < idx.size(); ++k) {
        const int r = rank[j][docs[idx[k]][j]];
        if (r > mine) {
          top = false;
          break;
        }
        if (r == mine) ++h;
      }
      if (top) u += lcm / h;
    }
    return u;
  };

  std::map<std::vector<std::size_t>, long long> best_cache;
  auto best_against = [&](std::vector<std::size_t> others) {
    std::sort(others.begin(), others.end());
    if (auto it = best_cache.find(others); it != best_cache.end()) return it->second;
    long long best = 0;
    std::vector<std::size_t> idx(others.size() + 1);
    std::copy(others.begin(), others.end(), idx.begin() + 1);
    for (std::size_t d = 0; d < docs.size(); ++d) {
      idx[0] = d;
      best = std::max(best, utility_of_first(idx));
    }
    best_cache.emplace(std::move(others), best);
    return best;
  };

  std::vector<StrategyProfile> found;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  std::function<void(int, std::size_t)> rec = [&](int i, std::size_t from) {
    if (i == n) {
      for (int who = 0; who < n; ++who) {
        if (who > 0 && pick[who] == pick[who - 1]) continue;  // same document, same verdict
        std::vector<std::size_t> idx{pick[who]};
        for (int k = 0; k < n; ++k) {
          if (k != who) idx.push_back(pick[k]);
        }
        const long long mine = utility_of_first(idx);
        if (best_against(std::vector<std::size_t>(idx.begin() + 1, idx.end())) > mine) return;
      }
      StrategyProfile s;
      for (std::size_t d : pick) {
        Document doc = Document::zeros(m);
        for (int j = 0; j < m; ++j) doc[j] = EpsRational(Rational(docs[d][j], granularity));
        s.documents.push_back(std::move(doc));
      }
      found.push_back(std::move(s));
      return;
    }
    for (std::size_t d = from; d < docs.size(); ++d) {
      pick[i] = d;
      rec(i + 1, d);
    }
  };
  rec(0, 0);
  return found;
}

}  // namespace corpusgame
