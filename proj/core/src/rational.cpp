#include "rotset/rational.hpp"

#include <cctype>
#include <cmath>

#include "rotset/errors.hpp"

namespace rotset {

std::string to_string(const Rational& q) { return q.str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw ValidationError("malformed rational \"" + std::string(text) + "\"",
                        {{"value", std::string(text)}});
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    Integer d{std::string(den)};
    if (d == 0) throw ValidationError("zero denominator in \"" + std::string(text) + "\"");
    value = Rational(Integer(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      bad(text);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) bad(text);
    value = Rational(Integer(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value cannot be made rational");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 bits of mantissa fit exactly in an int64 after scaling.
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(m)};
  Integer p2 = 1;
  for (int i = 0; i < std::abs(exp); ++i) p2 *= 2;
  return exp >= 0 ? Rational(r * p2) : Rational(r / p2);
}

Rational round_to_denominator(const Rational& q, std::int64_t denominator) {
  Rational scaled = q * denominator;
  Integer num = numerator(scaled);
  Integer den = boost::multiprecision::denominator(scaled);
  Integer twice = 2 * num + (num >= 0 ? den : Integer(-den));
  Integer rounded = twice / (2 * den);
  return Rational(rounded, Integer(denominator));
}

}  // namespace rotset
