#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corpusgame/equilibrium.hpp"

namespace corpusgame {

/// Extended rational; an empty value is +infinity.
struct Equity {
  std::optional<Rational> value;

  static Equity infinity() { return {}; }
  bool is_infinite() const { return !value.has_value(); }

  friend bool operator==(const Equity&, const Equity&) = default;
  friend std::strong_ordering operator<=>(const Equity& a, const Equity& b);
};
std::string to_string(const Equity& e);

/// Lowest post-deviation utility among players whose utility strictly drops
/// when i switches to d; infinite if nobody is harmed.
Equity deviation_equity(const GameSpec& spec, const StrategyProfile& s, int i, const Document& d);

/// Algorithm 1 with deterministic choices (lowest player, lowest query).
/// Requires uniform t >= 1/(floor(m/n)+1).
Document algorithm1_best_response(const GameSpec& spec, const StrategyProfile& s, int i);

enum class DeviationClass { Type1, Type2, Either };
std::string to_string(DeviationClass c);
DeviationClass classify_deviation(const GameSpec& spec, const StrategyProfile& s, int i);

struct SchedulerPolicy {
  enum class Kind { RoundRobin, SeededRandom, Scripted } kind = Kind::RoundRobin;
  std::uint64_t seed = 0;
  std::vector<int> script;

  static SchedulerPolicy round_robin() { return {}; }
  static SchedulerPolicy seeded(std::uint64_t seed) { return {Kind::SeededRandom, seed, {}}; }
  static SchedulerPolicy scripted(std::vector<int> players) { return {Kind::Scripted, 0, std::move(players)}; }
};
std::string to_string(const SchedulerPolicy& p);
/// "roundrobin", "random:SEED"; scripts are loaded by the caller.
SchedulerPolicy parse_scheduler(std::string_view text);

// Scripted replays given documents; each must be a best response unless
// DynamicsOptions::scripted_best_only is off.
enum class Responder { FairOracle, Algorithm1, Scripted };
std::string to_string(Responder r);
Responder parse_responder(std::string_view name);

enum class CycleMode { Exact, Permutation };
std::string to_string(CycleMode c);
CycleMode parse_cycle_mode(std::string_view name);

struct DynamicsStep {
  int index = 0;
  int player = 0;
  Document old_document;
  Document new_document;
  DeviationType deviation_type = DeviationType::None;
  Equity equity;
  std::vector<Rational> utilities;  // after the step
  std::vector<int> improvers;       // players with a profitable deviation before the step
};

struct Terminal {
  enum class Kind { Converged, CycleDetected, BudgetExhausted } kind = Kind::BudgetExhausted;
  int step = 0;         // Converged: number of steps taken
  int first_repeat = 0; // CycleDetected: index of the earlier equivalent profile
  int period = 0;       // CycleDetected: steps between the two
};
std::string to_string(Terminal::Kind k);

struct DynamicsTrace {
  StrategyProfile initial;
  StrategyProfile final_profile;
  std::vector<DynamicsStep> steps;
  std::vector<int> final_improvers;
  Terminal terminal;
};

struct DynamicsOptions {
  SchedulerPolicy scheduler;
  int max_steps = 100;
  Responder responder = Responder::FairOracle;
  CycleMode cycle_mode = CycleMode::Exact;
  std::vector<Document> scripted_documents;
  // Scripted responder: false accepts any strictly improving document.
  bool scripted_best_only = true;
};

/// Players with a strictly profitable deviation in s.
std::vector<int> improving_players(const GameSpec& spec, const StrategyProfile& s);

/// Best-response dynamics from s0.
DynamicsTrace run_dynamics(const GameSpec& spec, const StrategyProfile& s0, const DynamicsOptions& options);

/// Representative of s under relabelling players and queries.
StrategyProfile canonical_form(const StrategyProfile& s);

/// Seeded random start: each player drops 2m units of weight 1/(2m) on
/// queries or on an unused slot, uniformly.
StrategyProfile random_profile(int n, int m, std::uint64_t seed);

struct BoundCheck {
  std::string name;
  bool applicable = false;
  long long bound = 0;
  bool passed = true;
};

struct ConvergenceReport {
  std::vector<BoundCheck> checks;
  bool passed() const;
};

ConvergenceReport check_convergence_bounds(const DynamicsTrace& trace, const GameSpec& spec);

/// After a player's second (or later) deviation no new player gains a
/// profitable deviation.
bool second_deviation_property_check(const DynamicsTrace& trace);

}  // namespace corpusgame
