#include "corpusgame/thresholds.hpp"
#include "doctest.h"

using namespace corpusgame;

namespace {

struct Expected {
  Rational value;
  bool strict;
};

long long cdiv(long long a, long long b) { return (a + b - 1) / b; }

// Closed forms transcribed independently of the library.
Expected uniform_oracle(int n, int m, const Rational& p) {
  if (n == 1 || m <= n) return {0, false};
  const long long c2 = cdiv(2 * m, n), c1 = cdiv(m, n);
  const long long k = floor_int(1 / p);
  if (p <= Rational(1, c2 - 1)) return {0, false};
  if (p <= Rational(1, c1)) return {p - (p * (k + 1) - 1) / Rational(c2 - k), true};
  if (m % n == 0) return {(1 - Rational(n, m)) * Rational(n, m), true};
  return {Rational(1, c1), false};
}

Expected general_oracle(int n, int m, const Rational& p) {
  if (n == 1 || m <= n) return {0, false};
  const long long c2 = cdiv(2 * m, n), c1 = cdiv(m, n), z1 = m / n, z2 = m % n;
  const long long k = floor_int(1 / p);
  if (p <= Rational(1, c2 - 1)) return {0, false};
  if (p <= Rational(1, z1 + 1)) return {n * (1 - p) - 2 * p * (n * k - m), true};
  if (z2 == 0) return {Rational(m - n) / (Rational(m, n) + 1), false};
  if (z2 <= n - 2) return {Rational(m - n, c1), true};
  return {n * (1 - Rational(1, c1)), true};
}

std::vector<Rational> tenths() {
  std::vector<Rational> out;
  for (int i = 1; i <= 10; ++i) out.emplace_back(i, 10);
  return out;
}

}  // namespace

TEST_CASE("uniform bound, frozen values") {
  const ThresholdBound a = uniform_min_threshold(2, 5, Rational(3, 10));
  CHECK(a.value == Rational(1, 5));
  CHECK(a.strict);
  CHECK(a.region == Region::MediumPeak);
  const ThresholdBound b = uniform_min_threshold(2, 5, Rational(1, 2));
  CHECK(b.value == Rational(1, 3));
  CHECK_FALSE(b.strict);
  CHECK(b.region == Region::LargePeakNonDivisible);
  const ThresholdBound c = uniform_min_threshold(2, 4, Rational(1));
  CHECK(c.value == Rational(1, 4));
  CHECK(c.strict);
  CHECK(c.region == Region::LargePeakDivisible);
  CHECK(uniform_min_threshold(2, 5, Rational(1, 5)).region == Region::NoEnrichmentNeeded);
}

TEST_CASE("general bound, frozen values") {
  CHECK(general_min_threshold_norm(2, 4, Rational(1)) == ThresholdBound{Rational(2, 3), false, Region::GeneralModZero});
  CHECK(general_min_threshold_norm(4, 5, Rational(1)).value == Rational(1, 2));
  CHECK(general_min_threshold_norm(4, 5, Rational(1)).strict);
  CHECK(general_min_threshold_norm(3, 5, Rational(1)).value == Rational(3, 2));
  CHECK(general_min_threshold_norm(3, 5, Rational(1)).region == Region::GeneralModNMinus1);
  CHECK(general_min_threshold_norm(2, 5, Rational(3, 10)).value == Rational(4, 5));
  CHECK(general_min_threshold_norm(2, 5, Rational(3, 10)).strict);
}

TEST_CASE("bounds agree with the closed forms on the sweep grid") {
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= 12; ++m) {
      for (const Rational& p : tenths()) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(to_string(p));
        const Expected u = uniform_oracle(n, m, p);
        const ThresholdBound got_u = uniform_min_threshold(n, m, p);
        CHECK(got_u.value == u.value);
        CHECK(got_u.strict == u.strict);
        const Expected g = general_oracle(n, m, p);
        const ThresholdBound got_g = general_min_threshold_norm(n, m, p);
        CHECK(got_g.value == g.value);
        CHECK(got_g.strict == g.strict);
      }
    }
  }
}

TEST_CASE("the two printed unenriched conditions coincide") {
  for (int n = 1; n <= 8; ++n) {
    for (int m = 1; m <= 20; ++m) {
      for (int d = 1; d <= 24; ++d) {
        const GameShape s(n, m, Rational(1, d));
        CHECK(unenriched_equilibrium_exists(s) == unenriched_equilibrium_exists_shifted(s));
      }
    }
  }
}

TEST_CASE("materialize") {
  const ThresholdBound strict{Rational(1, 4), true, Region::LargePeakDivisible};
  CHECK(materialize(strict) == EpsRational(Rational(1, 4), 1));
  CHECK(materialize(strict, EpsPolicy::concrete(Rational(1, 1000))) == EpsRational(Rational(251, 1000)));
  const ThresholdBound closed{Rational(1, 3), false, Region::LargePeakNonDivisible};
  CHECK(materialize(closed) == EpsRational(Rational(1, 3)));
}

TEST_CASE("constructed vectors meet the general bound and pack into at most n documents") {
  for (int n = 2; n <= 5; ++n) {
    for (int m = n + 1; m <= 12; ++m) {
      for (const Rational& p : tenths()) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(to_string(p));
        const auto t = construct_threshold_vector(n, m, p);
        REQUIRE(static_cast<int>(t.size()) == m);
        const ThresholdBound b = general_min_threshold_norm(n, m, p);
        const EpsRational norm = l1_norm(t);
        if (b.strict) {
          CHECK(EpsRational(b.value) < norm);
        } else {
          CHECK(EpsRational(b.value) <= norm);
        }
        // Outside the large-peak region the uniform vector is returned.
        if (p > Rational(1, m / n + 1)) CHECK(norm.base() == b.value);
        CHECK(norm <= EpsRational(n));
        for (const auto& x : t) CHECK(x <= EpsRational(p));

        const auto docs = pack_thresholds_into_documents(t);
        CHECK(static_cast<int>(docs.size()) <= n);
        std::vector<EpsRational> top(m, EpsRational(0));
        for (const auto& d : docs) {
          EpsRational sum(0);
          for (int j = 0; j < m; ++j) {
            sum += d[j];
            top[j] = std::max(top[j], d[j]);
          }
          CHECK(sum <= EpsRational(1));
        }
        CHECK(top == t);
      }
    }
  }
}

TEST_CASE("uniform vector") {
  const auto t = uniform_threshold_vector(2, 4, Rational(1));
  CHECK(t == std::vector<EpsRational>(4, EpsRational(Rational(1, 4), 1)));
  CHECK(l1_norm(t) == EpsRational(1, 4));
}
