#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "corpusgame/eps_rational.hpp"

namespace corpusgame {

/// Single-peak scoring functions. Every shape is non-decreasing on [0, p],
/// non-increasing on [p, 1] and maximal (= 1) exactly at p.
enum class PeakFunction {
  Tent,         // w/p on [0,p], (1-w)/(1-p) on (p,1]
  SquaredTent,  // tent squared; same argmax structure, used to check rank invariance
};

std::string to_string(PeakFunction f);
PeakFunction parse_peak_function(std::string_view name);

/// Per-query focus weights of one publisher's document.
struct Document {
  std::vector<EpsRational> weights;

  Document() = default;
  explicit Document(std::vector<EpsRational> w) : weights(std::move(w)) {}
  static Document zeros(int m) { return Document(std::vector<EpsRational>(static_cast<std::size_t>(m))); }

  int size() const { return static_cast<int>(weights.size()); }
  const EpsRational& operator[](int j) const { return weights[static_cast<std::size_t>(j)]; }
  EpsRational& operator[](int j) { return weights[static_cast<std::size_t>(j)]; }
  EpsRational total() const;

  /// Throws std::invalid_argument unless every weight is in [0,1] and the sum is <= 1.
  void validate(int m) const;

  friend bool operator==(const Document&, const Document&) = default;
  friend auto operator<=>(const Document& a, const Document& b) { return a.weights <=> b.weights; }
};

struct StrategyProfile {
  std::vector<Document> documents;

  int players() const { return static_cast<int>(documents.size()); }
  const Document& operator[](int i) const { return documents[static_cast<std::size_t>(i)]; }
  Document& operator[](int i) { return documents[static_cast<std::size_t>(i)]; }

  /// Copy with player i's document replaced.
  StrategyProfile with(int i, Document d) const;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
  friend auto operator<=>(const StrategyProfile& a, const StrategyProfile& b) { return a.documents <=> b.documents; }
};

/// A ranking game with per-query thresholds. A uniform game has all
/// thresholds equal; a threshold of zero everywhere is the unenriched game.
struct GameSpec {
  int n = 1;
  int m = 1;
  Rational p = 1;
  std::vector<EpsRational> thresholds;
  PeakFunction peak = PeakFunction::Tent;

  static GameSpec uniform(int n, int m, Rational p, EpsRational t);
  static GameSpec with_thresholds(int n, int m, Rational p, std::vector<EpsRational> t);

  const EpsRational& threshold(int j) const { return thresholds[static_cast<std::size_t>(j)]; }
  bool is_uniform() const;

  /// Throws std::invalid_argument when n, m, p or a threshold is out of range.
  void validate() const;
  /// Validates the spec plus the profile's shape and every document.
  void validate(const StrategyProfile& s) const;
};

EpsRational score(const EpsRational& weight, const Rational& p, PeakFunction f = PeakFunction::Tent);

struct QueryOutcome {
  EpsRational winning_value;  // w_j: weight of the top-ranked original document
  std::vector<int> winners;   // original players tied at the top and meeting the threshold
  bool covered = false;       // some original player meets the threshold

  int winner_count() const { return static_cast<int>(winners.size()); }  // h_j
};

struct ProfileOutcome {
  std::vector<QueryOutcome> queries;
  std::vector<Rational> utility;
  std::vector<std::vector<int>> solo;  // J_i^solo
  std::vector<std::vector<int>> tie;   // J_i^tie

  Rational total_utility() const;
  bool all_covered() const;
  int wins(int i) const { return static_cast<int>(solo[i].size() + tie[i].size()); }  // |J_i|
};

/// Winner determination. A player meets threshold t_j when its score is at
/// least the score of a static document of weight t_j (ties favour players);
/// among those, the highest-scoring players win and split the query evenly.
ProfileOutcome evaluate(const GameSpec& spec, const StrategyProfile& s);

/// Outcome of the game restricted to all players except `excluded` (s_{-i}).
/// Utilities and win sets are indexed by original player id; the excluded
/// player's entries are zero/empty.
ProfileOutcome evaluate_without(const GameSpec& spec, const StrategyProfile& s, int excluded);

/// -max_j |p - w_j(s)|.
EpsRational social_welfare(const GameSpec& spec, const StrategyProfile& s);

/// x_i(s): queries that no other original player covers.
std::vector<int> uncovered_queries(const GameSpec& spec, const StrategyProfile& s, int i);

}  // namespace corpusgame
