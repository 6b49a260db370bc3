#include "tabulated_fn.hpp"

#include "errors.hpp"

#include <algorithm>

namespace feq {

namespace {

std::int64_t product_size(const std::vector<SetPtr>& domains) {
  if (domains.empty()) throw invalid_input("function needs at least one argument");
  std::int64_t n = 1;
  for (const SetPtr& d : domains) {
    n *= d->size();
    if (n > (std::int64_t(1) << 31))
      throw invalid_input("function table too large");
  }
  return n;
}

} // namespace

TabulatedFn::TabulatedFn(std::vector<SetPtr> domains, SetPtr codomain,
                         std::vector<std::int32_t> values)
    : domains_(std::move(domains)), codomain_(std::move(codomain)),
      values_(std::move(values)) {
  const std::int64_t n = product_size(domains_);
  if (static_cast<std::int64_t>(values_.size()) != n)
    throw invalid_input("value table size does not match domain product");
  for (std::int32_t v : values_)
    if (v < -1 || v >= codomain_->size())
      throw invalid_input("table value index out of codomain");
}

TabulatedFn TabulatedFn::tabulate(std::vector<SetPtr> domains, SetPtr codomain,
                                  const std::function<int(const std::vector<int>&)>& fn) {
  TabulatedFn f = tabulate_partial(std::move(domains), std::move(codomain), fn);
  if (!f.is_total()) throw internal_error("tabulate produced an undefined point");
  return f;
}

TabulatedFn TabulatedFn::tabulate_partial(
    std::vector<SetPtr> domains, SetPtr codomain,
    const std::function<int(const std::vector<int>&)>& fn) {
  const std::int64_t n = product_size(domains);
  std::vector<std::int32_t> values(static_cast<std::size_t>(n), -1);
  std::vector<int> idx(domains.size(), 0);
  for (std::int64_t flat = 0; flat < n; ++flat) {
    values[static_cast<std::size_t>(flat)] = static_cast<std::int32_t>(fn(idx));
    // advance mixed-radix counter
    for (int k = static_cast<int>(domains.size()) - 1; k >= 0; --k) {
      if (++idx[static_cast<std::size_t>(k)] < domains[static_cast<std::size_t>(k)]->size()) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
  }
  return TabulatedFn(std::move(domains), std::move(codomain), std::move(values));
}

std::int64_t TabulatedFn::encode(const std::vector<int>& indices) const {
  std::int64_t flat = 0;
  for (std::size_t k = 0; k < domains_.size(); ++k)
    flat = flat * domains_[k]->size() + indices[k];
  return flat;
}

std::vector<int> TabulatedFn::decode(std::int64_t flat) const {
  std::vector<int> idx(domains_.size());
  for (std::size_t k = domains_.size(); k-- > 0;) {
    idx[k] = static_cast<int>(flat % domains_[k]->size());
    flat /= domains_[k]->size();
  }
  return idx;
}

bool TabulatedFn::is_total() const {
  return std::find(values_.begin(), values_.end(), -1) == values_.end();
}

std::int64_t TabulatedFn::defined_count() const {
  return static_cast<std::int64_t>(
      std::count_if(values_.begin(), values_.end(), [](std::int32_t v) { return v >= 0; }));
}

const std::vector<int>& TabulatedFn::range() const {
  if (!range_ready_) {
    std::vector<bool> seen(static_cast<std::size_t>(codomain_->size()), false);
    for (std::int32_t v : values_)
      if (v >= 0) seen[static_cast<std::size_t>(v)] = true;
    range_.clear();
    for (int i = 0; i < codomain_->size(); ++i)
      if (seen[static_cast<std::size_t>(i)]) range_.push_back(i);
    range_ready_ = true;
  }
  return range_;
}

bool TabulatedFn::same_range(const TabulatedFn& f, const TabulatedFn& g) {
  const std::vector<int>& rf = f.range();
  const std::vector<int>& rg = g.range();
  if (rf.size() != rg.size()) return false;
  // compare as element sets; codomains may be distinct sets
  for (int i : rf) {
    const Element& e = f.codomain()->at(i);
    auto j = g.codomain()->index_of(e);
    if (!j || std::find(rg.begin(), rg.end(), *j) == rg.end()) return false;
  }
  return true;
}

bool TabulatedFn::eq_pointwise(const TabulatedFn& f, const TabulatedFn& g) {
  if (f.arity() != g.arity()) return false;
  for (int i = 0; i < f.arity(); ++i)
    if (!f.domain(i)->same_elements(*g.domain(i))) return false;
  for (std::int64_t t = 0; t < f.domain_size(); ++t) {
    const bool df = f.defined_at(t), dg = g.defined_at(t);
    if (df != dg) return false;
    if (df && f.element_at(t) != g.element_at(t)) return false;
  }
  return true;
}

std::string TabulatedFn::describe_point(std::int64_t flat) const {
  std::vector<int> idx = decode(flat);
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) s += ",";
    s += domains_[k]->at(idx[k]).str();
  }
  s += ")";
  if (defined_at(flat))
    s += " -> " + element_at(flat).str();
  else
    s += " undefined";
  return s;
}

TabulatedFn compose(const TabulatedFn& f, const TabulatedFn& g) {
  if (f.arity() != 1) throw invalid_input("compose: outer function must be unary");
  if (!f.domain(0)->same_elements(*g.codomain())) {
    // allow composition across distinct but compatible sets: map g-values
    // into f's domain by element
  }
  std::vector<std::int32_t> values(static_cast<std::size_t>(g.domain_size()), -1);
  for (std::int64_t t = 0; t < g.domain_size(); ++t) {
    if (!g.defined_at(t)) continue;
    const Element& mid = g.element_at(t);
    auto pos = f.domain(0)->index_of(mid);
    if (!pos)
      throw invalid_input("compose: value " + mid.str() +
                          " of inner function lies outside outer domain");
    if (!f.defined_at(*pos))
      throw invalid_input("compose: outer function undefined at " + mid.str());
    values[static_cast<std::size_t>(t)] = f.value_at(*pos);
  }
  return TabulatedFn(g.domains(), f.codomain(), std::move(values));
}

TabulatedFn section(const TabulatedFn& f, int arg_pos, const Element& a) {
  if (f.arity() < 2) throw invalid_input("section: function must have arity >= 2");
  if (arg_pos < 0 || arg_pos >= f.arity()) throw invalid_input("section: bad argument position");
  auto ai = f.domain(arg_pos)->index_of(a);
  if (!ai)
    throw invalid_input("section: element " + a.str() + " not in argument set");
  std::vector<SetPtr> rest;
  for (int i = 0; i < f.arity(); ++i)
    if (i != arg_pos) rest.push_back(f.domain(i));
  return TabulatedFn::tabulate_partial(rest, f.codomain(), [&](const std::vector<int>& idx) {
    std::vector<int> full;
    full.reserve(static_cast<std::size_t>(f.arity()));
    std::size_t j = 0;
    for (int i = 0; i < f.arity(); ++i) {
      if (i == arg_pos)
        full.push_back(*ai);
      else
        full.push_back(idx[j++]);
    }
    return static_cast<int>(f.value_at(f.encode(full)));
  });
}

TabulatedFn identity_fn(const SetPtr& s) {
  std::vector<std::int32_t> values(static_cast<std::size_t>(s->size()));
  for (int i = 0; i < s->size(); ++i) values[static_cast<std::size_t>(i)] = i;
  return TabulatedFn({s}, s, std::move(values));
}

TabulatedFn constant_fn(std::vector<SetPtr> domains, SetPtr codomain, int value_index) {
  const std::int64_t n = [&] {
    std::int64_t m = 1;
    for (const SetPtr& d : domains) m *= d->size();
    return m;
  }();
  std::vector<std::int32_t> values(static_cast<std::size_t>(n),
                                   static_cast<std::int32_t>(value_index));
  return TabulatedFn(std::move(domains), std::move(codomain), std::move(values));
}

} // namespace feq
