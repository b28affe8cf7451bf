#include "shbif/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace shbif {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational rational_from_decimal(std::string_view text) {
  const auto fail = [&] {
    throw std::invalid_argument("not a decimal literal: '" + std::string(text) + "'");
  };

  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail();

  // Split off an exponent part, if any.
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view etext = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool eneg = false;
    if (!etext.empty() && (etext.front() == '+' || etext.front() == '-')) {
      eneg = etext.front() == '-';
      etext.remove_prefix(1);
    }
    if (!all_digits(etext) || etext.size() > 6) fail();
    for (char c : etext) exponent = exponent * 10 + (c - '0');
    if (eneg) exponent = -exponent;
  }

  std::string_view intpart = s;
  std::string_view fracpart;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    intpart = s.substr(0, dot);
    fracpart = s.substr(dot + 1);
    if (intpart.empty() && fracpart.empty()) fail();
  }
  if (!intpart.empty() && !all_digits(intpart)) fail();
  if (!fracpart.empty() && !all_digits(fracpart)) fail();
  if (intpart.empty() && fracpart.empty()) fail();

  BigInt digits = 0;
  for (char c : intpart) digits = digits * 10 + (c - '0');
  for (char c : fracpart) digits = digits * 10 + (c - '0');

  long shift = exponent - static_cast<long>(fracpart.size());
  BigInt num = digits;
  BigInt den = 1;
  if (shift > 0) {
    for (long i = 0; i < shift; ++i) num *= 10;
  } else {
    for (long i = 0; i < -shift; ++i) den *= 10;
  }
  if (negative) num = -num;
  return Rational(num, den);
}

Rational rational_from_parts(const std::string& num, const std::string& den) {
  const auto parse_int = [](const std::string& t) {
    std::string_view s = t;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    if (!all_digits(s)) {
      throw std::invalid_argument("not an integer literal: '" + t + "'");
    }
    BigInt v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return negative ? BigInt(-v) : v;
  };
  BigInt n = parse_int(num);
  BigInt d = parse_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator");
  return Rational(n, d);
}

}  // namespace shbif
