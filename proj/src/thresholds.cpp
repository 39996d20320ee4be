#include "corpusgame/thresholds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "corpusgame/arrangement.hpp"

namespace corpusgame {

std::string to_string(Region r) {
  switch (r) {
    case Region::NoEnrichmentNeeded: return "no-enrichment";
    case Region::MediumPeak: return "medium-peak";
    case Region::LargePeakDivisible: return "large-peak-divisible";
    case Region::LargePeakNonDivisible: return "large-peak-non-divisible";
    case Region::GeneralModZero: return "general-mod-zero";
    case Region::GeneralModMiddle: return "general-mod-middle";
    case Region::GeneralModNMinus1: return "general-mod-n-minus-1";
  }
  return "unknown";
}

GameShape::GameShape(int players, int queries, Rational peak) : n(players), m(queries), p(std::move(peak)) {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be >= 1");
  if (p <= 0 || p > 1) throw std::invalid_argument("peak value must lie in (0,1], got " + to_string(p));
}

bool unenriched_equilibrium_exists(const GameShape& g) {
  const long long c = ceil_int(Rational(2 * g.m, g.n) - 1);
  return g.p <= Rational(1, std::max(c, 1LL));
}

bool unenriched_equilibrium_exists_shifted(const GameShape& g) {
  const long long c = g.ceil_double_ratio() - 1;
  return g.p <= Rational(1, std::max(c, 1LL));
}

namespace {

// A single publisher wins everything with any document; m <= n always has an
// equilibrium without enrichment.
bool trivially_stable(const GameShape& g) { return g.n == 1 || g.m <= g.n || unenriched_equilibrium_exists(g); }

}  // namespace

ThresholdBound uniform_min_threshold(int n, int m, const Rational& p) {
  const GameShape g(n, m, p);
  if (trivially_stable(g)) return {0, false, Region::NoEnrichmentNeeded};

  const long long c = g.ceil_double_ratio();
  const long long k = g.k();
  if (p <= Rational(1, g.ceil_ratio())) {
    // p > 1/(c-1) forces k <= c-2, so the denominator is positive.
    const Rational value = p - (p * (k + 1) - 1) / Rational(c - k);
    return {value, true, Region::MediumPeak};
  }
  if (g.z2() == 0) {
    const Rational ratio(n, m);
    return {(1 - ratio) * ratio, true, Region::LargePeakDivisible};
  }
  return {Rational(1, g.ceil_ratio()), false, Region::LargePeakNonDivisible};
}

ThresholdBound general_min_threshold_norm(int n, int m, const Rational& p) {
  const GameShape g(n, m, p);
  if (trivially_stable(g)) return {0, false, Region::NoEnrichmentNeeded};

  const long long z1 = g.z1();
  const long long z2 = g.z2();
  if (p <= Rational(1, z1 + 1)) {
    const Rational value = Rational(n) * (1 - p) - 2 * p * Rational(n * g.k() - m);
    return {value, true, Region::MediumPeak};
  }
  if (z2 == 0) return {Rational(m - n) / (Rational(m, n) + 1), false, Region::GeneralModZero};
  if (z2 <= n - 2) return {Rational(m - n, g.ceil_ratio()), true, Region::GeneralModMiddle};
  return {Rational(n) * (1 - Rational(1, g.ceil_ratio())), true, Region::GeneralModNMinus1};
}

EpsPolicy EpsPolicy::concrete(Rational d) {
  if (d <= 0) throw std::invalid_argument("concrete epsilon must be positive, got " + to_string(d));
  EpsPolicy out;
  out.kind = Kind::Concrete;
  out.delta = std::move(d);
  return out;
}

EpsRational materialize(const ThresholdBound& bound, const EpsPolicy& policy) {
  if (!bound.strict) return EpsRational(bound.value);
  if (policy.kind == EpsPolicy::Kind::Concrete) {
    if (policy.delta <= 0) throw std::invalid_argument("concrete epsilon must be positive");
    return EpsRational(bound.value + policy.delta);
  }
  return {bound.value, Rational(1)};
}

std::vector<EpsRational> uniform_threshold_vector(int n, int m, const Rational& p, const EpsPolicy& policy) {
  return std::vector<EpsRational>(static_cast<std::size_t>(m), materialize(uniform_min_threshold(n, m, p), policy));
}

std::vector<EpsRational> construct_threshold_vector(int n, int m, const Rational& p) {
  const ThresholdBound bound = general_min_threshold_norm(n, m, p);
  if (bound.region == Region::NoEnrichmentNeeded || bound.region == Region::MediumPeak) {
    return uniform_threshold_vector(n, m, p);
  }
  const Arrangement a = large_peak_arrangement(n, m, LargePeakPattern::General);
  const Rational share(1, m / n + 1);
  std::vector<EpsRational> t(static_cast<std::size_t>(m));
  for (int i = 0; i < n; ++i) {
    const auto& solo = a.solo[i];
    if (a.tie[i].empty()) {
      // Sole winner everywhere: the thresholds must strictly exceed 1 - share in total.
      const Rational each = (1 - share) / Rational(static_cast<long long>(solo.size()));
      for (int j : solo) t[j] = EpsRational(each);
      if (!solo.empty()) t[solo.front()] += EpsRational::epsilon();
    } else {
      for (int j : solo) t[j] = EpsRational(share);
    }
  }
  // With no sole-everywhere player the vector sits exactly on the bound; a
  // tie query can absorb the extra infinitesimal.
  if (bound.strict && l1_norm(t) == EpsRational(bound.value)) {
    for (int i = 0; i < n && l1_norm(t) == EpsRational(bound.value); ++i) {
      if (!a.tie[i].empty()) t[a.tie[i].front()] += EpsRational::epsilon();
    }
  }
  return t;
}

EpsRational l1_norm(const std::vector<EpsRational>& t) {
  return std::accumulate(t.begin(), t.end(), EpsRational(0));
}

std::vector<Document> pack_thresholds_into_documents(const std::vector<EpsRational>& t) {
  const int m = static_cast<int>(t.size());
  for (const auto& v : t) {
    if (v < EpsRational(0) || EpsRational(1) < v) {
      throw std::invalid_argument("threshold " + to_string(v) + " outside [0,1] cannot be packed");
    }
  }
  std::vector<int> order;
  for (int j = 0; j < m; ++j) {
    if (EpsRational(0) < t[j]) order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return t[b] < t[a]; });

  std::vector<Document> bins;
  std::vector<EpsRational> load;
  for (int j : order) {
    std::size_t b = 0;
    while (b < bins.size() && EpsRational(1) < load[b] + t[j]) ++b;
    if (b == bins.size()) {
      bins.push_back(Document::zeros(m));
      load.emplace_back(0);
    }
    bins[b][j] = t[j];
    load[b] += t[j];
  }
  return bins;
}

}  // namespace corpusgame
