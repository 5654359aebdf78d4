#include "prio/rational.hpp"

#include <cctype>

namespace prio {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      throw ParseError("bad rational literal: " + text);
    }
    BigInt d(den);
    if (d == 0) throw ParseError("zero denominator: " + text);
    return Rational(BigInt(num), d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_integer_literal(whole) || frac.empty() || !is_integer_literal(frac) ||
        frac[0] == '-' || frac[0] == '+') {
      throw ParseError("bad decimal literal: " + text);
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt whole_part(whole);
    BigInt frac_part(frac);
    bool negative = text[0] == '-';
    BigInt num = whole_part * scale + (negative ? -frac_part : frac_part);
    return Rational(num, scale);
  }
  if (!is_integer_literal(text)) throw ParseError("bad rational literal: " + text);
  return Rational(BigInt(text));
}

std::string format_rational(const Rational& value) {
  BigInt num = numerator(value);
  BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace prio
