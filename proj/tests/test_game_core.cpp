#include <random>

#include "corpusgame/game.hpp"
#include "doctest.h"

using namespace corpusgame;

namespace {

const EpsRational eps = EpsRational::epsilon();

Document doc(std::initializer_list<EpsRational> w) { return Document(std::vector<EpsRational>(w)); }

// Straightforward re-implementation used as a reference for evaluate().
std::vector<Rational> reference_utilities(const GameSpec& g, const StrategyProfile& s) {
  auto tent = [&](const EpsRational& w) {
    if (w <= EpsRational(g.p)) return w / g.p;
    if (g.p == 1) return w;
    return (EpsRational(1) - w) / (1 - g.p);
  };
  std::vector<Rational> u(g.n, Rational(0));
  for (int j = 0; j < g.m; ++j) {
    std::vector<int> top;
    EpsRational best(-1);
    for (int i = 0; i < g.n; ++i) {
      const EpsRational sc = tent(s[i][j]);
      if (sc < tent(g.threshold(j))) continue;
      if (best < sc) {
        best = sc;
        top = {i};
      } else if (sc == best) {
        top.push_back(i);
      }
    }
    for (int i : top) u[i] += Rational(1, static_cast<long>(top.size()));
  }
  return u;
}

StrategyProfile random_grid_profile(std::mt19937_64& rng, int n, int m, int g) {
  StrategyProfile s;
  for (int i = 0; i < n; ++i) {
    Document d = Document::zeros(m);
    int left = g;
    for (int j = 0; j < m && left > 0; ++j) {
      const int k = static_cast<int>(rng() % static_cast<unsigned>(left + 1));
      d.weights[j] = EpsRational(Rational(k, g), Rational(static_cast<long>(rng() % 3)));
      left -= k;
    }
    if (left == 0) {
      for (auto& w : d.weights) w = EpsRational(w.base());
    }
    s.documents.push_back(d);
  }
  return s;
}

}  // namespace

TEST_CASE("eps_rational order is lexicographic") {
  CHECK(EpsRational(Rational(1, 2)) < EpsRational(Rational(1, 2)) + eps);
  CHECK(EpsRational(Rational(1, 2)) + eps * 1000 < EpsRational(Rational(1, 2) + Rational(1, 1000000)));
  CHECK(EpsRational(Rational(1, 2)) - eps < EpsRational(Rational(1, 2)));
  CHECK(to_string(EpsRational(Rational(1, 2)) - eps) == "1/2 - 1/1e");

  std::mt19937_64 rng(11);
  auto r = [&] { return Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 4) + 1); };
  for (int k = 0; k < 500; ++k) {
    const EpsRational a(r(), r()), b(r(), r()), c(r(), r());
    CHECK(((a < b) + (b < a) + (a == b)) == 1);
    if (a < b && b < c) CHECK(a < c);
    CHECK((a + b) - b == a);
    if (a < b) CHECK(a + c < b + c);
  }
}

TEST_CASE("tent score") {
  CHECK(score(EpsRational(0), Rational(1, 2)) == EpsRational(0));
  CHECK(score(EpsRational(Rational(1, 2)), Rational(1, 2)) == EpsRational(1));
  CHECK(score(EpsRational(Rational(3, 4)), Rational(1, 2)) == EpsRational(Rational(1, 2)));
  CHECK(score(EpsRational(Rational(2, 5)), Rational(1)) == EpsRational(Rational(2, 5)));
  CHECK_THROWS(score(EpsRational(Rational(5, 4)), Rational(1, 2)));
}

TEST_CASE("utilities in the two-player cycle game") {
  const GameSpec g = GameSpec::uniform(2, 3, Rational(1, 2), EpsRational(Rational(1, 2)) - eps);
  StrategyProfile s{{doc({EpsRational(Rational(1, 2)) - eps, 0, Rational(1, 2)}),
                     doc({0, Rational(1, 2), EpsRational(Rational(1, 2)) - eps})}};
  const ProfileOutcome out = evaluate(g, s);
  CHECK(out.utility[0] == 2);
  CHECK(out.utility[1] == 1);
  CHECK(out.queries[2].winners == std::vector<int>{0});
}

TEST_CASE("single player wins everything at zero thresholds") {
  const GameSpec g = GameSpec::uniform(1, 4, Rational(1, 3), EpsRational(0));
  StrategyProfile s{{doc({Rational(1, 3), 0, 0, Rational(1, 2)})}};
  CHECK(evaluate(g, s).utility[0] == 4);
}

TEST_CASE("uniform four-player matrix utilities") {
  const GameSpec g = GameSpec::uniform(4, 5, Rational(1), EpsRational(Rational(1, 2)));
  const Rational h(1, 2);
  StrategyProfile s{{doc({h, h, 0, 0, 0}), doc({h, h, 0, 0, 0}), doc({0, 0, h, h, 0}), doc({0, 0, 0, h, h})}};
  const ProfileOutcome out = evaluate(g, s);
  CHECK(out.utility == std::vector<Rational>{1, 1, Rational(3, 2), Rational(3, 2)});
  CHECK(out.total_utility() == 5);
}

TEST_CASE("threshold ties go to the player") {
  const GameSpec g = GameSpec::uniform(2, 2, Rational(1), EpsRational(Rational(1, 3)));
  StrategyProfile s{{doc({Rational(1, 3), 0}), doc({0, EpsRational(Rational(1, 3)) - eps})}};
  const ProfileOutcome out = evaluate(g, s);
  CHECK(out.queries[0].covered);
  CHECK_FALSE(out.queries[1].covered);
  CHECK(out.queries[1].winning_value == EpsRational(Rational(1, 3)) - eps);
}

TEST_CASE("social welfare") {
  const GameSpec g = GameSpec::uniform(2, 3, Rational(1, 2), EpsRational(0));
  StrategyProfile zero{{Document::zeros(3), Document::zeros(3)}};
  CHECK(social_welfare(g, zero) == EpsRational(Rational(-1, 2)));
  const Rational h(1, 2);
  StrategyProfile peak{{doc({h, h, 0}), doc({0, 0, h})}};
  CHECK(social_welfare(g, peak) == EpsRational(0));
}

TEST_CASE("uncovered queries") {
  const GameSpec g = GameSpec::uniform(2, 4, Rational(1), EpsRational(Rational(1, 3)));
  StrategyProfile s{{Document::zeros(4), doc({0, 0, Rational(1, 2), Rational(1, 3)})}};
  CHECK(uncovered_queries(g, s, 0) == std::vector<int>{0, 1});
  const GameSpec z = GameSpec::uniform(2, 4, Rational(1), EpsRational(0));
  CHECK(uncovered_queries(z, s, 0).empty());
}

TEST_CASE("evaluate matches the reference on random profiles") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 400; ++k) {
    const int n = 2 + static_cast<int>(rng() % 3), m = 2 + static_cast<int>(rng() % 5);
    const Rational p(1 + static_cast<long>(rng() % 4), 4);
    std::vector<EpsRational> t;
    for (int j = 0; j < m; ++j) t.emplace_back(p * Rational(static_cast<long>(rng() % 3), 3));
    const GameSpec g = GameSpec::with_thresholds(n, m, p, t);
    const StrategyProfile s = random_grid_profile(rng, n, m, 8);
    const ProfileOutcome out = evaluate(g, s);
    CHECK(out.utility == reference_utilities(g, s));
    CHECK(out.total_utility() <= m);
    CHECK((out.total_utility() == m) == out.all_covered());
  }
}

TEST_CASE("invalid input is rejected") {
  CHECK_THROWS(GameSpec::uniform(2, 3, Rational(1, 2), EpsRational(Rational(3, 4))).validate());
  const GameSpec g = GameSpec::uniform(2, 2, Rational(1), EpsRational(0));
  CHECK_THROWS(evaluate(g, StrategyProfile{{doc({Rational(3, 4), Rational(1, 2)}), Document::zeros(2)}}));
  CHECK_THROWS(evaluate(g, StrategyProfile{{Document::zeros(2)}}));
  CHECK_THROWS(evaluate(g, StrategyProfile{{doc({EpsRational(1) + eps, 0}), Document::zeros(2)}}));
}
