#include "mdc/rational.hpp"

#include <array>
#include <charconv>
#include <limits>

#include "mdc/error.hpp"

namespace mdc {

namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorKind::Parse,
              "not a rational number: '" + std::string(text) + "'");
}

std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  if (digits.empty()) bad(whole);
  std::int64_t v = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) bad(whole);
  return v;
}

std::int64_t pow10(int e, std::string_view whole) {
  if (e > 18) bad(whole);
  std::int64_t p = 1;
  for (int i = 0; i < e; ++i) p *= 10;
  return p;
}

}  // namespace

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_decimal_string(const Rational& r) {
  std::int64_t den = r.denominator();
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) return to_string(r);
  const int digits = std::max(twos, fives);
  if (digits == 0) return std::to_string(r.numerator());
  const std::int64_t scale = pow10(digits, "");
  const std::int64_t scaled = r.numerator() * (scale / r.denominator());
  const bool neg = scaled < 0;
  std::string mag = std::to_string(neg ? -scaled : scaled);
  if (static_cast<int>(mag.size()) <= digits)
    mag.insert(0, std::string(digits + 1 - mag.size(), '0'));
  mag.insert(mag.size() - digits, ".");
  while (mag.back() == '0') mag.pop_back();
  if (mag.back() == '.') mag.pop_back();
  return neg ? "-" + mag : mag;
}

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  if (text.empty()) bad(whole);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(text.substr(0, slash), whole);
    const std::int64_t den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) bad(whole);
    return Rational(num, den);
  }
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<int>(parse_int(text.substr(e + 1), whole));
    text = text.substr(0, e);
  }
  bool neg = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string digits;
  int frac_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    frac_digits = static_cast<int>(text.size() - dot - 1);
  } else {
    digits = std::string(text);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    bad(whole);
  while (digits.size() > 1 && digits.front() == '0') digits.erase(0, 1);
  if (digits.size() > 18) bad(whole);
  Rational r(parse_int(digits, whole));
  exponent -= frac_digits;
  if (exponent > 0) r *= pow10(exponent, whole);
  if (exponent < 0) r /= pow10(-exponent, whole);
  return neg ? -r : r;
}

Rational rational_from_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error(ErrorKind::InvalidInput, "bad number");
  return parse_rational(std::string_view(buf.data(), ptr - buf.data()));
}

double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace mdc
