#include "hypdel/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>

namespace hypdel {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string exp_text(body.substr(e + 1));
    if (exp_text.empty()) throw ParseError("bad exponent in '" + std::string(text) + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw ParseError("bad exponent in '" + std::string(text) + "'");
    }
    if (used != exp_text.size()) throw ParseError("bad exponent in '" + std::string(text) + "'");
    body = body.substr(0, e);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto int_part = body.substr(0, dot);
    auto frac_part = body.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw ParseError("not a number: '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(body)) throw ParseError("not a number: '" + std::string(text) + "'");
    digits = std::string(body);
  }
  mpz_class numer(digits, 10);
  mpz_class scale;
  long shift = exponent - frac_len;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational value = shift < 0 ? Rational(numer, scale) : Rational(numer * scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational p = parse_decimal(text.substr(0, slash));
    Rational q = parse_decimal(text.substr(slash + 1));
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r = p / q;
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) {
  double d = q.get_d();
  if (!std::isfinite(d)) return d;
  Rational exact(d);
  if (exact == q) return d;
  // The truncated value lies between d and its neighbour away from zero.
  double next = std::nextafter(d, sgn(q) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(next)) return d;
  Rational lo = abs(q - exact), hi = abs(Rational(next) - q);
  if (lo < hi) return d;
  if (hi < lo) return next;
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  return bits % 2 == 0 ? d : next;
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite value");
  Rational r(x);
  r.canonicalize();
  return r;
}

}  // namespace hypdel
