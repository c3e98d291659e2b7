#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypdel {

using Rational = mpq_class;

/// Raised for malformed numeric or file input.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a geometric precondition fails (degenerate input, wrong side, ...).
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", an integer, or a decimal literal ("-1.25", "3e-2") into an
/// exact rational. Decimal literals are converted exactly (0.1 == 1/10).
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Nearest double (ties to even); get_d() alone truncates.
double to_double(const Rational& q);
inline double to_double(double x) { return x; }

/// Exact conversion; every finite double is a dyadic rational.
Rational exact_from_double(double x);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(double x, double eps = 0.0) { return x > eps ? 1 : (x < -eps ? -1 : 0); }

}  // namespace hypdel
