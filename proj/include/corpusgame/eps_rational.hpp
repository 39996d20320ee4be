#pragma once

#include <compare>
#include <ostream>
#include <string>

#include "corpusgame/rational.hpp"

namespace corpusgame {

/// An exact value `base + eps * ε` where ε is a positive infinitesimal.
///
/// Ordering is lexicographic on (base, eps), so `a + bε > a` for every b > 0
/// and no finite rational lies strictly between `a` and `a + ε`. Strict
/// inequalities such as "t must exceed v" materialize as `v + ε`.
class EpsRational {
 public:
  EpsRational() = default;
  EpsRational(Rational base) : base_(std::move(base)) {}  // NOLINT(implicit)
  EpsRational(Rational base, Rational eps) : base_(std::move(base)), eps_(std::move(eps)) {}
  EpsRational(long long base) : base_(base) {}  // NOLINT(implicit)

  static EpsRational epsilon(const Rational& coeff = 1) { return {Rational(0), coeff}; }

  const Rational& base() const { return base_; }
  const Rational& eps() const { return eps_; }
  bool is_finite_rational() const { return eps_ == 0; }

  EpsRational& operator+=(const EpsRational& o) {
    base_ += o.base_;
    eps_ += o.eps_;
    return *this;
  }
  EpsRational& operator-=(const EpsRational& o) {
    base_ -= o.base_;
    eps_ -= o.eps_;
    return *this;
  }
  EpsRational& operator*=(const Rational& k) {
    base_ *= k;
    eps_ *= k;
    return *this;
  }
  EpsRational& operator/=(const Rational& k) {
    base_ /= k;
    eps_ /= k;
    return *this;
  }

  friend EpsRational operator+(EpsRational a, const EpsRational& b) { return a += b; }
  friend EpsRational operator-(EpsRational a, const EpsRational& b) { return a -= b; }
  friend EpsRational operator-(const EpsRational& a) { return {-a.base_, -a.eps_}; }
  friend EpsRational operator*(EpsRational a, const Rational& k) { return a *= k; }
  friend EpsRational operator*(const Rational& k, EpsRational a) { return a *= k; }
  friend EpsRational operator/(EpsRational a, const Rational& k) { return a /= k; }

  friend bool operator==(const EpsRational& a, const EpsRational& b) {
    return a.base_ == b.base_ && a.eps_ == b.eps_;
  }
  friend std::strong_ordering operator<=>(const EpsRational& a, const EpsRational& b) {
    if (auto c = compare(a.base_, b.base_); c != 0) return c;
    return compare(a.eps_, b.eps_);
  }

 private:
  Rational base_{0};
  Rational eps_{0};
};

/// "a/b" when the ε part is zero, otherwise "a/b + c/dε".
std::string to_string(const EpsRational& value);
std::ostream& operator<<(std::ostream& os, const EpsRational& value);

inline const EpsRational& max(const EpsRational& a, const EpsRational& b) { return a < b ? b : a; }
inline const EpsRational& min(const EpsRational& a, const EpsRational& b) { return b < a ? b : a; }

}  // namespace corpusgame
