#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace feq {

/// Exact rational number, always in lowest terms with positive denominator.
/// All model arithmetic is exact; there is no floating point anywhere.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d);
  Rational(std::int64_t n) : num(n), den(1) {}

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;

  bool is_integer() const { return den == 1; }

  /// "p/q", or just "p" when the denominator is 1.
  std::string str() const;

  /// Parses "p", "-p" or "p/q". Returns false if the text is not of that shape
  /// or q is zero.
  static bool parse(const std::string& text, Rational& out);
};

Rational rat_max(const Rational& a, const Rational& b);
Rational rat_min(const Rational& a, const Rational& b);

} // namespace feq
