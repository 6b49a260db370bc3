#pragma once

#include "rational.hpp"

#include <cstddef>
#include <string>
#include <variant>

namespace feq {

/// A point of a finite universe: either an opaque symbol or an exact
/// rational. Symbols and rationals never compare equal to each other.
class Element {
public:
  Element() : value_(std::string()) {}

  static Element symbol(std::string s) { return Element(std::move(s)); }
  static Element rational(Rational r) { return Element(r); }
  static Element integer(std::int64_t n) { return Element(Rational(n)); }

  bool is_symbol() const { return std::holds_alternative<std::string>(value_); }
  bool is_rational() const { return std::holds_alternative<Rational>(value_); }

  const std::string& sym() const { return std::get<std::string>(value_); }
  const Rational& rat() const { return std::get<Rational>(value_); }

  bool operator==(const Element& o) const { return value_ == o.value_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

  /// Display form; rationals as "p/q" (or "p"), symbols verbatim.
  std::string str() const {
    return is_symbol() ? sym() : rat().str();
  }

  /// Text that parses as an integer or "p/q" becomes a rational; everything
  /// else is a symbol. This is the convention of the instance file format.
  static Element parse(const std::string& text) {
    Rational r;
    if (Rational::parse(text, r)) return Element::rational(r);
    return Element::symbol(text);
  }

  std::size_t hash() const {
    if (is_symbol()) return std::hash<std::string>()(sym()) * 2 + 1;
    const Rational& r = rat();
    std::size_t h = std::hash<std::int64_t>()(r.num);
    h ^= std::hash<std::int64_t>()(r.den) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h * 2;
  }

private:
  explicit Element(std::string s) : value_(std::move(s)) {}
  explicit Element(Rational r) : value_(r) {}

  std::variant<std::string, Rational> value_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

} // namespace feq
