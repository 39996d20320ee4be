#pragma once

#include <vector>

#include "corpusgame/game.hpp"

namespace corpusgame {

/// Which player wins which query, at what common weight. Every query has at
/// least one intended winner and the per-player query sets partition Q.
struct Arrangement {
  int n = 0;
  int m = 0;
  std::vector<std::vector<int>> winners;  // per query
  std::vector<EpsRational> value;         // per query winning weight
  std::vector<std::vector<int>> solo;     // per player
  std::vector<std::vector<int>> tie;      // per player

  /// Each winner places `value[j]` on query j; everything else is zero.
  StrategyProfile profile() const;
  void check() const;  // throws std::logic_error on a broken partition
};

/// Builds an arrangement with at most two winners per query from per-player
/// solo counts and tie counts. Tied queries come first, then solo queries in
/// player order. Requires sum(ties) even and every tie count <= #tie queries.
Arrangement pairwise_arrangement(int m, const std::vector<int>& solo_counts, const std::vector<int>& tie_counts,
                                 const EpsRational& value);

/// Deals q queries per player round-robin so winner counts differ by at most one.
Arrangement dealt_arrangement(int n, int m, int per_player, const EpsRational& value);

/// Solo counts as equal as possible summing to `total` (larger counts first).
std::vector<int> balanced_counts(int n, int total);

enum class LargePeakPattern {
  Uniform,  // as many one-tie players as possible
  General,  // minimal-norm pattern: z2 players solo everywhere, the rest with two ties
};

/// Large-peak arrangement with a common winning value: 1/(floor(m/n)+1), except
/// the uniform pattern with n dividing m, which spreads 1/(m/n) over m/n solo queries.
Arrangement large_peak_arrangement(int n, int m, LargePeakPattern pattern);

}  // namespace corpusgame
