#pragma once

#include "element.hpp"
#include "errors.hpp"

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace feq {

class FiniteSet;
using SetPtr = std::shared_ptr<const FiniteSet>;

/// Ordered finite universe of labeled elements. The canonical order is the
/// declaration order and is fixed for the lifetime of the set; every
/// "smallest"/tie-break rule in the engine refers to this order.
class FiniteSet {
public:
  explicit FiniteSet(std::vector<Element> elements, std::string name = "")
      : elements_(std::move(elements)), name_(std::move(name)) {
    if (elements_.empty()) throw invalid_input("set '" + name_ + "' is empty");
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      auto [it, fresh] = index_.emplace(elements_[i], static_cast<int>(i));
      if (!fresh)
        throw invalid_input("set '" + name_ + "' has duplicate element " +
                            elements_[i].str());
    }
  }

  static SetPtr make(std::vector<Element> elements, std::string name = "") {
    return std::make_shared<FiniteSet>(std::move(elements), std::move(name));
  }

  /// Consecutive integers 0..n-1 as rationals.
  static SetPtr integers(std::int64_t n, std::string name = "") {
    std::vector<Element> elems;
    elems.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) elems.push_back(Element::integer(i));
    return make(std::move(elems), std::move(name));
  }

  int size() const { return static_cast<int>(elements_.size()); }
  const Element& at(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::string& name() const { return name_; }

  std::optional<int> index_of(const Element& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Element& e) const { return index_.count(e) != 0; }

  /// Structural equality: same elements in the same order.
  bool same_elements(const FiniteSet& o) const { return elements_ == o.elements_; }

  /// True if every element of this set occurs in o.
  bool subset_of(const FiniteSet& o) const {
    for (const Element& e : elements_)
      if (!o.contains(e)) return false;
    return true;
  }

private:
  std::vector<Element> elements_;
  std::unordered_map<Element, int, ElementHash> index_;
  std::string name_;
};

} // namespace feq
