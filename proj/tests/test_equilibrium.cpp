#include <algorithm>
#include <random>

#include "corpusgame/equilibrium.hpp"
#include "doctest.h"

using namespace corpusgame;

namespace {

const EpsRational eps = EpsRational::epsilon();

Document doc(std::initializer_list<EpsRational> w) { return Document(std::vector<EpsRational>(w)); }

StrategyProfile random_profile_on_grid(std::mt19937_64& rng, int n, int m, int g) {
  StrategyProfile s;
  for (int i = 0; i < n; ++i) {
    std::vector<int> units(static_cast<std::size_t>(m) + 1, 0);
    for (int u = 0; u < g; ++u) ++units[rng() % units.size()];
    Document d = Document::zeros(m);
    for (int j = 0; j < m; ++j) d.weights[j] = EpsRational(Rational(units[j], g));
    s.documents.push_back(d);
  }
  return s;
}

}  // namespace

TEST_CASE("best response in the cycle game") {
  const GameSpec g = GameSpec::uniform(2, 3, Rational(1, 2), EpsRational(Rational(1, 2)) - eps);
  const StrategyProfile s{{doc({EpsRational(Rational(1, 2)) - eps, 0, Rational(1, 2)}),
                           doc({0, Rational(1, 2), EpsRational(Rational(1, 2)) - eps})}};
  const BestResponseResult br = best_response(g, s, 1);
  CHECK(br.utility == 2);
  const auto all = optimal_responses(g, s, 1);
  const Document want = doc({Rational(1, 2), EpsRational(Rational(1, 2)) - eps, 0});
  CHECK(std::any_of(all.begin(), all.end(), [&](const BestResponseResult& r) { return r.strategy == want; }));
  for (const auto& r : all) CHECK(evaluate(g, s.with(1, r.strategy)).utility[1] == 2);
}

TEST_CASE("frontier and exhaustive search agree") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3), m = 3 + static_cast<int>(rng() % 4);
    const Rational p(1 + static_cast<long>(rng() % 5), 5);
    const GameSpec g = GameSpec::uniform(n, m, p, EpsRational(p * Rational(static_cast<long>(rng() % 4), 4)));
    const StrategyProfile s = random_profile_on_grid(rng, n, m, 10);
    const int i = static_cast<int>(rng() % n);
    const BestResponseResult a = best_response(g, s, i, SearchMode::Frontier);
    const BestResponseResult b = best_response(g, s, i, SearchMode::Exhaustive);
    CHECK(a.utility == b.utility);
    CHECK(evaluate(g, s.with(i, a.strategy)).utility[i] == a.utility);
  }
}

TEST_CASE("every optimal response evaluates as reported") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 150; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3), m = 3 + static_cast<int>(rng() % 4);
    const Rational p(1 + static_cast<long>(rng() % 5), 5);
    const GameSpec g = GameSpec::uniform(n, m, p, EpsRational(p * Rational(static_cast<long>(rng() % 4), 4)));
    const StrategyProfile s = random_profile_on_grid(rng, n, m, 6);
    const int i = static_cast<int>(rng() % n);
    for (const auto& r : optimal_responses(g, s, i)) {
      const ProfileOutcome out = evaluate(g, s.with(i, r.strategy));
      CHECK(out.utility[i] == r.utility);
      CHECK(out.solo[i] == r.solo);
      CHECK(out.tie[i] == r.tie);
    }
  }
}

TEST_CASE("no grid deviation beats the oracle") {
  std::mt19937_64 rng(9);
  const auto docs = grid_documents(4, 6);
  for (int k = 0; k < 40; ++k) {
    const Rational p(1 + static_cast<long>(rng() % 3), 3);
    const GameSpec g = GameSpec::uniform(2, 4, p, EpsRational(p * Rational(static_cast<long>(rng() % 3), 3)));
    const StrategyProfile s = random_profile_on_grid(rng, 2, 4, 6);
    const Rational best = best_response(g, s, 0).utility;
    Rational grid_best = 0;
    for (const auto& d : docs) grid_best = std::max(grid_best, evaluate(g, s.with(0, d)).utility[0]);
    CHECK(grid_best <= best);
  }
}

TEST_CASE("constructions verify at the bound and fail below it") {
  const struct {
    int n, m;
    Rational p;
  } cells[] = {{2, 5, Rational(1, 2)}, {2, 4, Rational(1)}, {3, 5, Rational(1, 3)}, {4, 5, Rational(1)},
               {3, 7, Rational(3, 10)}, {2, 6, Rational(1, 5)}};
  for (const auto& c : cells) {
    CAPTURE(c.n);
    CAPTURE(c.m);
    const ThresholdBound b = uniform_min_threshold(c.n, c.m, c.p);
    const auto t = uniform_threshold_vector(c.n, c.m, c.p);
    const GameSpec g = GameSpec::with_thresholds(c.n, c.m, c.p, t);
    CHECK(verify_equilibrium(g, construct_equilibrium(c.n, c.m, c.p, t)).is_equilibrium);
    if (b.region == Region::NoEnrichmentNeeded) continue;
    const std::vector<EpsRational> lower(c.m, EpsRational(b.value - Rational(1, 1000)));
    const GameSpec gl = GameSpec::with_thresholds(c.n, c.m, c.p, lower);
    CHECK_THROWS_AS(construct_equilibrium(c.n, c.m, c.p, lower), std::invalid_argument);
    const StrategyProfile at_bound = construct_equilibrium(c.n, c.m, c.p, t);
    CHECK_FALSE(verify_equilibrium(gl, at_bound).is_equilibrium);
  }
}

TEST_CASE("general constructions verify") {
  for (int n = 2; n <= 4; ++n) {
    for (int m = n + 1; m <= 8; ++m) {
      const Rational p(1);
      const auto t = construct_threshold_vector(n, m, p);
      const GameSpec g = GameSpec::with_thresholds(n, m, p, t);
      CAPTURE(n);
      CAPTURE(m);
      CHECK(verify_equilibrium(g, construct_equilibrium(n, m, p, t, EnrichmentMode::General)).is_equilibrium);
    }
  }
}

TEST_CASE("welfare of constructions") {
  const GameSpec medium = GameSpec::with_thresholds(3, 5, Rational(1, 3), uniform_threshold_vector(3, 5, Rational(1, 3)));
  CHECK(social_welfare(medium, construct_equilibrium(3, 5, Rational(1, 3), medium.thresholds)) == EpsRational(0));
  const GameSpec large = GameSpec::uniform(2, 5, Rational(1, 2), EpsRational(Rational(1, 3)));
  CHECK(social_welfare(large, construct_equilibrium(2, 5, Rational(1, 2), large.thresholds)) ==
        EpsRational(Rational(-1, 6)));
}

TEST_CASE("relabelling players relabels the outcome") {
  const auto t = uniform_threshold_vector(3, 7, Rational(1, 2));
  const GameSpec g = GameSpec::with_thresholds(3, 7, Rational(1, 2), t);
  const StrategyProfile s = construct_equilibrium(3, 7, Rational(1, 2), t);
  const StrategyProfile r{{s[2], s[0], s[1]}};
  const ProfileOutcome a = evaluate(g, s), b = evaluate(g, r);
  CHECK(b.utility == std::vector<Rational>{a.utility[2], a.utility[0], a.utility[1]});
  CHECK(verify_equilibrium(g, r).is_equilibrium);
}

TEST_CASE("verify reports a witness") {
  const GameSpec g = GameSpec::uniform(2, 3, Rational(1, 2), EpsRational(Rational(1, 2)) - eps);
  const StrategyProfile s{{doc({EpsRational(Rational(1, 2)) - eps, 0, Rational(1, 2)}),
                           doc({0, Rational(1, 2), EpsRational(Rational(1, 2)) - eps})}};
  const Verdict v = verify_equilibrium(g, s);
  CHECK_FALSE(v.is_equilibrium);
  REQUIRE(v.player.has_value());
  REQUIRE(v.witness.has_value());
  CHECK(evaluate(g, s.with(*v.player, v.witness->strategy)).utility[*v.player] > evaluate(g, s).utility[*v.player]);
}

TEST_CASE("deviation patterns") {
  const GameSpec g = GameSpec::uniform(2, 5, Rational(1, 2), EpsRational(Rational(1, 3)));
  CHECK(classify_pattern(g, {0, 1}, {}) == DeviationType::Type1);
  CHECK(classify_pattern(g, {0, 1}, {2}) == DeviationType::Type2);
  CHECK(classify_pattern(g, {0}, {2, 3}) == DeviationType::Type2);
  CHECK(classify_pattern(g, {0}, {}) == DeviationType::None);
}

TEST_CASE("grid search finds unenriched equilibria") {
  const GameSpec g = GameSpec::uniform(2, 4, Rational(1, 4), EpsRational(0));
  const auto found = grid_search_equilibria(g, 4);
  CHECK_FALSE(found.empty());
  for (const auto& s : found) CHECK(verify_equilibrium(g, s).is_equilibrium);
  CHECK_THROWS(grid_search_equilibria(GameSpec::uniform(4, 5, Rational(1), EpsRational(0)), 4));
}
