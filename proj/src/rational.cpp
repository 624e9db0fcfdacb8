#include "fjs/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>

#include "fjs/error.hpp"

namespace fjs {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_exact_decimal(const Rational& r) {
  std::int64_t den = r.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return {};
  if (r.denominator() == 1) return std::to_string(r.numerator());

  const int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Rational scaled = r * scale;
  std::int64_t num = scaled.numerator();
  const bool negative = num < 0;
  if (negative) num = -num;
  std::string body = std::to_string(num);
  if (static_cast<int>(body.size()) <= digits) {
    body.insert(0, static_cast<std::size_t>(digits + 1) - body.size(), '0');
  }
  body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  while (body.back() == '0') body.pop_back();
  if (body.back() == '.') body.pop_back();
  return negative ? "-" + body : body;
}

std::string to_fixed(const Rational& r, int digits) {
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half away from zero
  const Rational scaled = r * scale;
  std::int64_t q = scaled.numerator() / scaled.denominator();
  const Rational frac = scaled - q;
  if (frac * 2 >= 1) ++q;
  if (frac * 2 <= -1) --q;
  const bool negative = q < 0;
  std::string body = std::to_string(negative ? -q : q);
  if (digits > 0) {
    if (static_cast<int>(body.size()) <= digits) {
      body.insert(0, static_cast<std::size_t>(digits + 1) - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  return negative ? "-" + body : body;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw FjsError(ErrorCode::syntax, "malformed number '" + std::string(whole) + "'");
  }
  return v;
}

Rational pow10(int e) {
  Rational r(1);
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= 10;
  return e < 0 ? Rational(1) / r : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw FjsError(ErrorCode::syntax, "empty number");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(text.substr(0, slash), text);
    const std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw FjsError(ErrorCode::syntax, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view mantissa = text;
  int exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = static_cast<int>(parse_int(text.substr(e + 1), text));
    if (exponent > 18 || exponent < -18) {
      throw FjsError(ErrorCode::syntax, "exponent out of range in '" + std::string(text) + "'");
    }
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_point = false;
  for (const char c : mantissa) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw FjsError(ErrorCode::syntax, "malformed number '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw FjsError(ErrorCode::syntax, "malformed number '" + std::string(text) + "'");
  // drop trailing fractional zeros to keep the integer small
  while (frac_digits > 0 && digits.size() > 1 && digits.back() == '0') {
    digits.pop_back();
    --frac_digits;
  }
  if (digits.size() > 18) {
    throw FjsError(ErrorCode::syntax, "too many digits in '" + std::string(text) + "'");
  }
  Rational value(parse_int(digits, text));
  value *= pow10(exponent - frac_digits);
  return negative ? -value : value;
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational ceil_div(const Rational& a, std::int64_t b) {
  const Rational q = a / b;
  std::int64_t f = q.numerator() / q.denominator();
  if (Rational(f) < q) ++f;
  return Rational(f);
}

}  // namespace fjs
