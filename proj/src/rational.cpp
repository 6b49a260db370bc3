#include "rational.hpp"

#include "errors.hpp"

#include <cctype>
#include <cstdlib>

namespace feq {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw invalid_input("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

bool Rational::operator<(const Rational& o) const {
  // denominators are positive, desk-scale magnitudes: no overflow concern
  return num * o.den < o.num * den;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

bool Rational::parse(const std::string& text, Rational& out) {
  if (text.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') {
    neg = text[i] == '-';
    ++i;
  }
  if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  std::int64_t n = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    n = n * 10 + (text[i] - '0');
    ++i;
  }
  std::int64_t d = 1;
  if (i < text.size()) {
    if (text[i] != '/') return false;
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    d = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      d = d * 10 + (text[i] - '0');
      ++i;
    }
    if (i != text.size() || d == 0) return false;
  }
  out = Rational(neg ? -n : n, d);
  return true;
}

Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }

} // namespace feq
