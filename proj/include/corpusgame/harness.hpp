#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "corpusgame/io.hpp"

namespace corpusgame {

struct SweepConfig {
  int n_min = 2;
  int n_max = 5;
  int m_max = 12;  // m ranges over n+1 .. m_max
  std::vector<Rational> p_grid;

  static SweepConfig standard();  // n 2..5, m up to 12, p in {1/10, ..., 1}
  void validate() const;
};

struct SweepRow {
  int n = 0;
  int m = 0;
  Rational p;
  ThresholdBound uniform;
  ThresholdBound general;
  EpsRational uniform_norm;  // m * t_min
  EpsRational general_norm;
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);
std::string sweep_csv(const std::vector<SweepRow>& rows);
json sweep_json(const std::vector<SweepRow>& rows);

/// Comma-separated rationals, e.g. "1/10,1/5,1".
std::vector<Rational> parse_rational_list(std::string_view text);

struct ReplayResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> notes;
  json detail;
};

std::vector<std::string> fixture_names();
/// Runs fixtures/<name>.json and checks its documented outcome.
ReplayResult replay_fixture(const std::string& name, const std::filesystem::path& fixtures_dir);

}  // namespace corpusgame
