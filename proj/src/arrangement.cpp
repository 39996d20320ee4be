#include "corpusgame/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace corpusgame {

StrategyProfile Arrangement::profile() const {
  StrategyProfile s;
  s.documents.assign(static_cast<std::size_t>(n), Document::zeros(m));
  for (int j = 0; j < m; ++j) {
    for (int i : winners[j]) s[i][j] = value[j];
  }
  return s;
}

void Arrangement::check() const {
  if (static_cast<int>(winners.size()) != m || static_cast<int>(value.size()) != m) {
    throw std::logic_error("arrangement: per-query tables have wrong size");
  }
  for (int j = 0; j < m; ++j) {
    if (winners[j].empty()) throw std::logic_error("arrangement: query without a winner");
  }
  std::vector<int> seen(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < n; ++i) {
    for (int j : solo[i]) {
      if (winners[j].size() != 1 || winners[j][0] != i) throw std::logic_error("arrangement: bad solo entry");
    }
    for (int j : tie[i]) {
      if (winners[j].size() < 2) throw std::logic_error("arrangement: tie entry with one winner");
    }
  }
  for (int j = 0; j < m; ++j) {
    for (int i : winners[j]) seen[j] += i >= 0 && i < n;
    if (seen[j] != static_cast<int>(winners[j].size())) throw std::logic_error("arrangement: bad winner id");
  }
}

std::vector<int> balanced_counts(int n, int total) {
  std::vector<int> out(static_cast<std::size_t>(n), total / n);
  for (int i = 0; i < total % n; ++i) out[i] += 1;
  return out;
}

Arrangement pairwise_arrangement(int m, const std::vector<int>& solo_counts, const std::vector<int>& tie_counts,
                                 const EpsRational& value) {
  const int n = static_cast<int>(solo_counts.size());
  if (static_cast<int>(tie_counts.size()) != n) throw std::invalid_argument("solo/tie count size mismatch");
  const int solos = std::accumulate(solo_counts.begin(), solo_counts.end(), 0);
  const int slots = std::accumulate(tie_counts.begin(), tie_counts.end(), 0);
  if (slots % 2 != 0) throw std::invalid_argument("tie slots must pair up");
  const int ties = slots / 2;
  if (solos + ties != m) {
    throw std::invalid_argument("arrangement covers " + std::to_string(solos + ties) + " queries, expected " +
                                std::to_string(m));
  }

  Arrangement a;
  a.n = n;
  a.m = m;
  a.winners.resize(static_cast<std::size_t>(m));
  a.value.assign(static_cast<std::size_t>(m), value);
  a.solo.resize(static_cast<std::size_t>(n));
  a.tie.resize(static_cast<std::size_t>(n));

  std::vector<int> slot_owner;
  for (int i = 0; i < n; ++i) {
    if (tie_counts[i] < 0 || solo_counts[i] < 0) throw std::invalid_argument("negative count");
    if (tie_counts[i] > ties) throw std::invalid_argument("player needs more tie queries than exist");
    slot_owner.insert(slot_owner.end(), static_cast<std::size_t>(tie_counts[i]), i);
  }
  // Slots s and s + ties never share an owner: each owner's block is at most `ties` long.
  for (int s = 0; s < ties; ++s) {
    const int a_owner = slot_owner[s];
    const int b_owner = slot_owner[s + ties];
    a.winners[s] = {a_owner, b_owner};
    a.tie[a_owner].push_back(s);
    a.tie[b_owner].push_back(s);
  }
  int next = ties;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < solo_counts[i]; ++c, ++next) {
      a.winners[next] = {i};
      a.solo[i].push_back(next);
    }
  }
  for (auto& t : a.tie) std::sort(t.begin(), t.end());
  a.check();
  return a;
}

Arrangement dealt_arrangement(int n, int m, int per_player, const EpsRational& value) {
  if (per_player > m) throw std::invalid_argument("cannot deal more distinct queries than exist");
  Arrangement a;
  a.n = n;
  a.m = m;
  a.winners.resize(static_cast<std::size_t>(m));
  a.value.assign(static_cast<std::size_t>(m), value);
  a.solo.resize(static_cast<std::size_t>(n));
  a.tie.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < per_player; ++c) {
      const int j = (i * per_player + c) % m;
      a.winners[j].push_back(i);
    }
  }
  for (int j = 0; j < m; ++j) {
    std::sort(a.winners[j].begin(), a.winners[j].end());
    for (int i : a.winners[j]) (a.winners[j].size() == 1 ? a.solo : a.tie)[i].push_back(j);
  }
  a.check();
  return a;
}

Arrangement large_peak_arrangement(int n, int m, LargePeakPattern pattern) {
  const int z1 = m / n;
  const int z2 = m % n;
  if (z1 < 1) throw std::invalid_argument("large-peak arrangement needs m > n");
  std::vector<int> beta;
  std::vector<int> ties;
  auto add = [&](int count, int solo, int tie) {
    for (int c = 0; c < count; ++c) {
      beta.push_back(solo);
      ties.push_back(tie);
    }
  };

  if (pattern == LargePeakPattern::Uniform) {
    if (z2 == 0) {
      add(n, z1, 0);
      return pairwise_arrangement(m, beta, ties, EpsRational(Rational(1, z1)));
    }
    const int tie_queries = n - z2;
    if (2 * tie_queries <= n) {
      add(2 * tie_queries, z1, 1);
      add(n - 2 * tie_queries, z1 + 1, 0);
    } else {
      add(2 * tie_queries - n, z1 - 1, 2);
      add(2 * z2, z1, 1);
    }
  } else {
    if (z2 == n - 1 && n >= 2) {
      add(2, z1, 1);
      add(n - 2, z1 + 1, 0);
    } else {
      add(n - z2, z1 - 1, 2);
      add(z2, z1 + 1, 0);
    }
  }
  return pairwise_arrangement(m, beta, ties, EpsRational(Rational(1, z1 + 1)));
}

}  // namespace corpusgame
