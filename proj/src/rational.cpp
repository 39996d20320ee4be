#include "corpusgame/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "corpusgame/eps_rational.hpp"

namespace corpusgame {

namespace {



std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
  }
  // Leading zeros would select octal in the string constructor.
  while (i + 1 < s.size() && s[i] == '0') ++i;
  Integer v(std::string(s.substr(i)));
  return s.front() == '-' ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), text);
    Integer den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    const bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
    Integer num = parse_integer(digits, text);
    Integer den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    Rational r(num, den);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_decimal(const Rational& value, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << value.convert_to<double>();
  return os.str();
}

Rational floor_div(const Rational& value) {
  Integer q = numerator(value) / denominator(value);  // truncates toward zero
  if (value < 0 && Rational(q) != value) q -= 1;
  return Rational(q);
}

Rational ceil_div(const Rational& value) {
  Rational f = floor_div(value);
  return f == value ? f : Rational(f + 1);
}

long long floor_int(const Rational& value) { return numerator(floor_div(value)).convert_to<long long>(); }
long long ceil_int(const Rational& value) { return numerator(ceil_div(value)).convert_to<long long>(); }

std::string to_string(const EpsRational& value) {
  if (value.is_finite_rational()) return to_string(value.base());
  std::string out = to_string(value.base());
  out += value.eps() < 0 ? " - " : " + ";
  out += to_string(value.eps() < 0 ? Rational(-value.eps()) : value.eps());
  out += "e";
  return out;
}

std::ostream& operator<<(std::ostream& os, const EpsRational& value) { return os << to_string(value); }

}  // namespace corpusgame
