#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace qliar {

using Rational = boost::multiprecision::cpp_rational;

// A probability as read from a table: the float used for computation and,
// when the source was an exact p/q literal (or snapped), the exact value.
struct Probability {
  double value = 0.0;
  std::optional<Rational> exact;

  static Probability from_rational(const Rational& r);
  bool operator==(const Probability&) const = default;
};

double to_double(const Rational& r);
std::string to_string(const Rational& r);

// Closest fraction with denominator <= max_den, if it lies within tol of x.
std::optional<Rational> snap_rational(double x, long max_den = 10000, double tol = 1e-12);

// Shortest decimal that reads back as the same double.
std::string format_double(double x);

// Numeric literal forms accepted in scenario files:
//   decimal (0.25, -1e-3), rational (1/12, -2/3), square root (sqrt(1/3),
//   -sqrt(2/3)). Returns nullopt on malformed input.
struct NumericLiteral {
  double value = 0.0;
  std::optional<Rational> exact;  // set for decimal-free p/q and integer forms
};
std::optional<NumericLiteral> parse_numeric(std::string_view text);

}  // namespace qliar
