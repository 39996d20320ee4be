#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corpusgame/arrangement.hpp"
#include "corpusgame/game.hpp"
#include "corpusgame/thresholds.hpp"

namespace corpusgame {

enum class EnrichmentMode { Uniform, General };
std::string to_string(EnrichmentMode mode);
EnrichmentMode parse_enrichment_mode(std::string_view name);

enum class DeviationType { None, Type1, Type2 };
std::string to_string(DeviationType t);

/// Arrangement behind the equilibrium for <n, m, p> in the given mode.
Arrangement equilibrium_arrangement(int n, int m, const Rational& p, EnrichmentMode mode = EnrichmentMode::Uniform);

/// Builds a pure equilibrium for <n, m, p, t>. Throws std::invalid_argument
/// when n >= m or t does not meet the bound for the mode; the result is not
/// self-verified (see verify_equilibrium).
StrategyProfile construct_equilibrium(int n, int m, const Rational& p, const std::vector<EpsRational>& thresholds,
                                      EnrichmentMode mode = EnrichmentMode::Uniform);

/// What player i can do at one query against s_{-i}.
enum class QueryAction { Skip, Tie, Solo };

struct QueryOption {
  QueryAction action = QueryAction::Skip;
  EpsRational cost;          // weight needed, before any "strictly above" increment
  bool strictly_above = false;  // needs cost + (positive infinitesimal)
  Rational gain = 0;
};

/// Per query: skip, tie with the current top (when it meets the threshold),
/// or win alone. Tent scoring only.
std::vector<std::vector<QueryOption>> query_options(const GameSpec& spec, const StrategyProfile& s, int i);

struct BestResponseResult {
  Document strategy;
  Rational utility = 0;
  std::vector<int> solo;
  std::vector<int> tie;
  DeviationType deviation_type = DeviationType::None;
};

enum class SearchMode {
  Frontier,    // exact Pareto-frontier search, any m
  Exhaustive,  // all 3^m action vectors, m <= 16
};

/// Exact maximizer of player i's utility against s_{-i}.
BestResponseResult best_response(const GameSpec& spec, const StrategyProfile& s, int i,
                                 SearchMode mode = SearchMode::Frontier);

/// Every utility-maximizing response on the action lattice (one document per
/// distinct action vector), in lexicographic document order.
std::vector<BestResponseResult> optimal_responses(const GameSpec& spec, const StrategyProfile& s, int i);

DeviationType classify_pattern(const GameSpec& spec, const std::vector<int>& solo, const std::vector<int>& tie);

struct Verdict {
  bool is_equilibrium = true;
  std::optional<int> player;
  std::optional<BestResponseResult> witness;
};

Verdict verify_equilibrium(const GameSpec& spec, const StrategyProfile& s);

/// All profiles on the weight grid {0, 1/g, ..., 1} (up to player
/// permutation) with no profitable grid deviation. Evidence only.
std::vector<StrategyProfile> grid_search_equilibria(const GameSpec& spec, int granularity);

/// All documents on the grid, in lexicographic order.
std::vector<Document> grid_documents(int m, int granularity);

}  // namespace corpusgame
