#pragma once

#include <string>
#include <vector>

#include "corpusgame/game.hpp"

namespace corpusgame {

enum class Region {
  NoEnrichmentNeeded,
  MediumPeak,
  LargePeakDivisible,
  LargePeakNonDivisible,
  GeneralModZero,
  GeneralModMiddle,
  GeneralModNMinus1,
};

std::string to_string(Region r);

/// Integer shape parameters of a game <n, m, p>.
struct GameShape {
  int n;
  int m;
  Rational p;

  GameShape(int players, int queries, Rational peak);

  long long k() const { return floor_int(Rational(1) / p); }         // floor(1/p)
  long long z1() const { return m / n; }                              // floor(m/n)
  long long z2() const { return m % n; }                              // m mod n
  long long ceil_ratio() const { return (m + n - 1) / n; }            // ceil(m/n)
  long long ceil_double_ratio() const { return (2 * m + n - 1) / n; }  // ceil(2m/n)
};

/// Existence condition for the unenriched game as printed with ceil(2m/n - 1).
bool unenriched_equilibrium_exists(const GameShape& g);
/// Same condition written with ceil(2m/n) - 1 (the lower edge of the medium range).
bool unenriched_equilibrium_exists_shifted(const GameShape& g);

/// A closed-form lower bound. strict = the quantity must exceed `value`.
struct ThresholdBound {
  Rational value;
  bool strict = false;
  Region region = Region::NoEnrichmentNeeded;

  friend bool operator==(const ThresholdBound&, const ThresholdBound&) = default;
};

/// Minimal common threshold t for which <n, m, p, t> has a pure equilibrium.
ThresholdBound uniform_min_threshold(int n, int m, const Rational& p);

/// Minimal L1 norm of a threshold vector admitting a pure equilibrium.
ThresholdBound general_min_threshold_norm(int n, int m, const Rational& p);

/// How a strict bound turns into a concrete threshold value.
struct EpsPolicy {
  enum class Kind { Infinitesimal, Concrete } kind = Kind::Infinitesimal;
  Rational delta = 0;

  static EpsPolicy infinitesimal() { return {}; }
  static EpsPolicy concrete(Rational d);
};

EpsRational materialize(const ThresholdBound& bound, const EpsPolicy& policy = EpsPolicy::infinitesimal());

/// Uniform threshold vector at the materialized uniform bound.
std::vector<EpsRational> uniform_threshold_vector(int n, int m, const Rational& p,
                                                  const EpsPolicy& policy = EpsPolicy::infinitesimal());

/// Minimal-norm threshold vector. In the large-peak region (p > 1/(floor(m/n)+1))
/// thresholds are positive only on the single-winner queries of the companion
/// general arrangement; elsewhere the uniform vector is returned.
std::vector<EpsRational> construct_threshold_vector(int n, int m, const Rational& p);

EpsRational l1_norm(const std::vector<EpsRational>& t);

/// First-fit-decreasing packing of thresholds into static documents whose
/// per-query maximum reproduces t exactly.
std::vector<Document> pack_thresholds_into_documents(const std::vector<EpsRational>& t);

}  // namespace corpusgame
