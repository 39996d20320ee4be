#include "corpusgame/dynamics.hpp"
#include "doctest.h"

using namespace corpusgame;

namespace {

const EpsRational eps = EpsRational::epsilon();

Document doc(std::initializer_list<EpsRational> w) { return Document(std::vector<EpsRational>(w)); }

GameSpec cycle_game() { return GameSpec::uniform(2, 3, Rational(1, 2), EpsRational(Rational(1, 2)) - eps); }

StrategyProfile cycle_start() {
  return {{doc({EpsRational(Rational(1, 2)) - eps, 0, Rational(1, 2)}),
           doc({0, Rational(1, 2), EpsRational(Rational(1, 2)) - eps})}};
}

}  // namespace

TEST_CASE("equity ordering") {
  CHECK(Equity{Rational(1)} < Equity::infinity());
  CHECK(Equity{Rational(1, 2)} < Equity{Rational(1)});
  CHECK(Equity::infinity() == Equity::infinity());
  CHECK(to_string(Equity::infinity()) == "inf");
}

TEST_CASE("deviation equity") {
  const GameSpec g = GameSpec::uniform(2, 4, Rational(1), EpsRational(Rational(2, 5)));
  const EpsRational t(Rational(2, 5));
  const StrategyProfile s{{doc({0, 0, t, t + eps}), doc({0, t + eps, 0, t})}};
  // Taking two uncovered queries harms nobody.
  CHECK(deviation_equity(g, s, 1, doc({t, t, 0, 0})).is_infinite());
  // Outbidding player 0 on q3 leaves it with one query.
  CHECK(deviation_equity(g, s, 1, doc({0, t, t + eps, 0})) == Equity{Rational(1)});
}

TEST_CASE("reported step equity matches a direct evaluation") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const GameSpec g = GameSpec::uniform(3, 7, Rational(2, 5), EpsRational(Rational(1, 3)));
    DynamicsOptions o;
    o.max_steps = 8;
    const DynamicsTrace tr = run_dynamics(g, random_profile(3, 7, seed), o);
    StrategyProfile s = tr.initial;
    for (const auto& st : tr.steps) {
      CHECK(deviation_equity(g, s, st.player, st.new_document) == st.equity);
      s = s.with(st.player, st.new_document);
    }
  }
}

TEST_CASE("the scripted cycle returns to a relabelled start") {
  DynamicsOptions o;
  o.scheduler = SchedulerPolicy::scripted({1, 0, 1, 0, 1, 0, 1, 0});
  o.cycle_mode = CycleMode::Permutation;
  o.max_steps = 10;
  const DynamicsTrace t = run_dynamics(cycle_game(), cycle_start(), o);
  REQUIRE_FALSE(t.steps.empty());
  CHECK(t.steps[0].new_document == doc({Rational(1, 2), EpsRational(Rational(1, 2)) - eps, 0}));
  CHECK(t.steps[0].utilities == std::vector<Rational>{1, 2});
  CHECK(t.terminal.kind == Terminal::Kind::CycleDetected);
  CHECK(t.terminal.period == 1);

  o.cycle_mode = CycleMode::Exact;
  const DynamicsTrace exact = run_dynamics(cycle_game(), cycle_start(), o);
  CHECK(exact.terminal.kind == Terminal::Kind::CycleDetected);
  CHECK(exact.terminal.period == 6);
}

TEST_CASE("canonical form ignores player and query labels") {
  const StrategyProfile s{{doc({Rational(1, 3), 0, Rational(1, 2)}), doc({0, Rational(1, 4), 0})}};
  const StrategyProfile r{{doc({Rational(1, 4), 0, 0}), doc({0, Rational(1, 2), Rational(1, 3)})}};
  CHECK(canonical_form(s) == canonical_form(r));
  const StrategyProfile q{{doc({Rational(1, 4), 0, 0}), doc({0, Rational(1, 2), Rational(1, 4)})}};
  CHECK_FALSE(canonical_form(s) == canonical_form(q));
}

TEST_CASE("converged runs end in equilibria and respect the step bound") {
  const int n = 3, m = 6;
  const Rational p(1);
  const GameSpec g = GameSpec::uniform(n, m, p, EpsRational(Rational(1, 3), 1));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DynamicsOptions o;
    o.scheduler = SchedulerPolicy::seeded(seed);
    const DynamicsTrace t = run_dynamics(g, random_profile(n, m, seed), o);
    REQUIRE(t.terminal.kind == Terminal::Kind::Converged);
    CHECK(static_cast<int>(t.steps.size()) <= n);
    CHECK(verify_equilibrium(g, t.final_profile).is_equilibrium);
    CHECK(t.final_improvers.empty());
  }
}

TEST_CASE("runs are deterministic") {
  const GameSpec g = GameSpec::uniform(3, 5, Rational(1), EpsRational(Rational(1, 2)));
  DynamicsOptions o;
  o.scheduler = SchedulerPolicy::seeded(42);
  const DynamicsTrace a = run_dynamics(g, random_profile(3, 5, 7), o);
  const DynamicsTrace b = run_dynamics(g, random_profile(3, 5, 7), o);
  CHECK(a.final_profile == b.final_profile);
  CHECK(a.steps.size() == b.steps.size());
  CHECK(random_profile(3, 5, 7) == random_profile(3, 5, 7));
  CHECK_FALSE(random_profile(3, 5, 7) == random_profile(3, 5, 8));
}

TEST_CASE("algorithm 1 matches the oracle on dynamics states") {
  const int n = 3, m = 7;
  const GameSpec g = GameSpec::uniform(n, m, Rational(1), EpsRational(Rational(1, 3)));
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    DynamicsOptions o;
    o.scheduler = SchedulerPolicy::seeded(seed);
    const DynamicsTrace t = run_dynamics(g, random_profile(n, m, seed), o);
    StrategyProfile s = t.initial;
    for (const auto& st : t.steps) {
      const Document d = algorithm1_best_response(g, s, st.player);
      CHECK(evaluate(g, s.with(st.player, d)).utility[st.player] == best_response(g, s, st.player).utility);
      s = s.with(st.player, st.new_document);
    }
  }
}

TEST_CASE("algorithm 1 contests a twice-tied opponent when it must") {
  // the only opponent with at most one tie sits at t + eps on both its queries
  const GameSpec g = GameSpec::uniform(5, 10, Rational(1, 2), EpsRational(Rational(1, 3)));
  const EpsRational t(Rational(1, 3));
  const EpsRational o = t + eps;
  const StrategyProfile s{{doc({0, 0, 0, 0, 0, 0, 0, 0, o, o}), doc({0, t, t, t, 0, 0, 0, 0, 0, 0}),
                           doc({0, 0, 0, 0, 0, 0, t, t, 0, t}), doc({t, 0, 0, t, 0, t, 0, 0, 0, 0}),
                           doc({0, 0, t, 0, t, t, 0, 0, 0, 0})}};
  const Document d = algorithm1_best_response(g, s, 2);
  CHECK(evaluate(g, s.with(2, d)).utility[2] == Rational(5, 2));
  CHECK(best_response(g, s, 2).utility == Rational(5, 2));
}

TEST_CASE("algorithm 1 rejects games outside its regime") {
  const GameSpec g = GameSpec::uniform(2, 5, Rational(1), EpsRational(Rational(1, 5)));
  CHECK_THROWS_AS(algorithm1_best_response(g, random_profile(2, 5, 1), 0), std::invalid_argument);
}

TEST_CASE("scripted responder checks its documents") {
  DynamicsOptions o;
  o.scheduler = SchedulerPolicy::scripted({1});
  o.responder = Responder::Scripted;
  o.scripted_documents = {doc({Rational(1, 2), 0, 0})};
  CHECK_THROWS_AS(run_dynamics(cycle_game(), cycle_start(), o), std::invalid_argument);
  o.scripted_documents = {doc({Rational(1, 2), EpsRational(Rational(1, 2)) - eps, 0})};
  const DynamicsTrace t = run_dynamics(cycle_game(), cycle_start(), o);
  CHECK(t.steps.size() == 1);
  CHECK(t.terminal.kind == Terminal::Kind::BudgetExhausted);
}

TEST_CASE("scheduler and option parsing") {
  CHECK(parse_scheduler("roundrobin").kind == SchedulerPolicy::Kind::RoundRobin);
  CHECK(parse_scheduler("random:17").seed == 17);
  CHECK_THROWS(parse_scheduler("random:x"));
  CHECK(parse_responder("alg1") == Responder::Algorithm1);
  CHECK(parse_cycle_mode("perm") == CycleMode::Permutation);
  CHECK_THROWS(parse_cycle_mode("loose"));
}

TEST_CASE("convergence bound checks") {
  const GameSpec g = GameSpec::uniform(2, 5, Rational(1), EpsRational(Rational(1, 3)));
  DynamicsOptions o;
  o.scheduler = SchedulerPolicy::round_robin();
  const DynamicsTrace t = run_dynamics(g, random_profile(2, 5, 3), o);
  const ConvergenceReport r = check_convergence_bounds(t, g);
  bool general_applies = false;
  for (const auto& c : r.checks) {
    if (c.name == "general: steps <= n(n+3)/2") {
      general_applies = c.applicable;
      CHECK(c.bound == 5);
    }
  }
  CHECK(general_applies);
  CHECK(r.passed());
  CHECK(second_deviation_property_check(t));
}
