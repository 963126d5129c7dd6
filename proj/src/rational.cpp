#include "qliar/rational.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace qliar {

Probability Probability::from_rational(const Rational& r) { return {to_double(r), r}; }

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rational> snap_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents p_k/q_k.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(rest);
    if (std::abs(a) > 1e15) break;
    const auto ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0;
    const long long q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= tol) return Rational(p1, q1);
    const double frac = rest - a;
    if (frac == 0.0) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

namespace {

std::optional<NumericLiteral> parse_plain(std::string_view t) {
  if (t.empty()) return std::nullopt;
  const auto slash = t.find('/');
  if (slash != std::string_view::npos) {
    auto num = t.substr(0, slash);
    auto den = t.substr(slash + 1);
    if (num.empty() || den.empty()) return std::nullopt;
    auto digits_ok = [](std::string_view s, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false)) return std::nullopt;
    using boost::multiprecision::cpp_int;
    cpp_int n(std::string(num[0] == '+' ? num.substr(1) : num));
    cpp_int d{std::string(den)};
    if (d == 0) return std::nullopt;
    Rational r(n, d);
    return NumericLiteral{to_double(r), r};
  }
  double v = 0.0;
  const char* first = t.data();
  if (t[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  NumericLiteral lit{v, std::nullopt};
  if (t.find_first_of(".eE") == std::string_view::npos) lit.exact = Rational(boost::multiprecision::cpp_int(std::string(first, ptr)));
  return lit;
}

}  // namespace

std::optional<NumericLiteral> parse_numeric(std::string_view text) {
  bool negative = false;
  std::string_view t = text;
  if (!t.empty() && (t[0] == '-' || t[0] == '+') && t.substr(1).starts_with("sqrt(")) {
    negative = t[0] == '-';
    t.remove_prefix(1);
  }
  if (t.starts_with("sqrt(")) {
    if (!t.ends_with(")")) return std::nullopt;
    auto inner = parse_plain(t.substr(5, t.size() - 6));
    if (!inner || inner->value < 0) return std::nullopt;
    const double root = std::sqrt(inner->value);
    return NumericLiteral{negative ? -root : root, std::nullopt};
  }
  return parse_plain(t);
}

}  // namespace qliar
