#pragma once

#include "finite_set.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace feq {

/// Total or partial finite function given by a flat value table over the
/// Cartesian product of its domain sets. Entries hold codomain indices;
/// -1 marks an undefined point. Tuples are laid out row-major, i.e.
/// lexicographically in the canonical orders of the domain sets.
class TabulatedFn {
public:
  TabulatedFn(std::vector<SetPtr> domains, SetPtr codomain,
              std::vector<std::int32_t> values);

  /// Builds a total function by evaluating `fn` on every tuple of domain
  /// indices; `fn` returns a codomain index.
  static TabulatedFn tabulate(std::vector<SetPtr> domains, SetPtr codomain,
                              const std::function<int(const std::vector<int>&)>& fn);

  /// Same, but `fn` may return -1 to leave a point undefined.
  static TabulatedFn tabulate_partial(std::vector<SetPtr> domains, SetPtr codomain,
                                      const std::function<int(const std::vector<int>&)>& fn);

  int arity() const { return static_cast<int>(domains_.size()); }
  const SetPtr& domain(int i) const { return domains_[static_cast<std::size_t>(i)]; }
  const std::vector<SetPtr>& domains() const { return domains_; }
  const SetPtr& codomain() const { return codomain_; }

  /// Number of tuples in the full Cartesian product.
  std::int64_t domain_size() const { return static_cast<std::int64_t>(values_.size()); }

  std::int64_t encode(const std::vector<int>& indices) const;
  std::vector<int> decode(std::int64_t flat) const;

  std::int32_t value_at(std::int64_t flat) const { return values_[static_cast<std::size_t>(flat)]; }
  bool defined_at(std::int64_t flat) const { return value_at(flat) >= 0; }
  const std::vector<std::int32_t>& values() const { return values_; }

  const Element& element_at(std::int64_t flat) const {
    return codomain_->at(value_at(flat));
  }

  bool is_total() const;
  std::int64_t defined_count() const;

  /// Exact set of table values as codomain indices, ascending (i.e. in the
  /// codomain's canonical order). Computed once.
  const std::vector<int>& range() const;

  /// True if the ranges of f and g are equal as sets of elements.
  static bool same_range(const TabulatedFn& f, const TabulatedFn& g);

  /// Pointwise equality as functions: structurally equal domain lists, the
  /// same defined points, and equal value *elements* (codomains may differ).
  static bool eq_pointwise(const TabulatedFn& f, const TabulatedFn& g);

  /// Human-readable "(a,b) -> c" text for diagnostics.
  std::string describe_point(std::int64_t flat) const;

private:
  std::vector<SetPtr> domains_;
  SetPtr codomain_;
  std::vector<std::int32_t> values_;
  mutable std::vector<int> range_;
  mutable bool range_ready_ = false;
};

/// (f.g)(x) = f(g(x)) with unary f; defined wherever g is defined. Errors if
/// some value of g lies outside the defined domain of f.
TabulatedFn compose(const TabulatedFn& f, const TabulatedFn& g);

/// The section of f fixing argument `arg_pos` (0-based) to element a; arity
/// drops by one. Partial points propagate.
TabulatedFn section(const TabulatedFn& f, int arg_pos, const Element& a);

/// Identity function on a set.
TabulatedFn identity_fn(const SetPtr& s);

/// Constant function on the given domains.
TabulatedFn constant_fn(std::vector<SetPtr> domains, SetPtr codomain, int value_index);

} // namespace feq
