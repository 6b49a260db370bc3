#include "quasi_inverse.hpp"

#include "bigcount.hpp"
#include "errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace feq {

// A partial table is treated as a total function on its defined points, so
// sections of appendix-style restricted domains work unchanged.
std::vector<std::vector<std::int64_t>> fibers(const TabulatedFn& f) {
  const std::vector<int>& rng = f.range();
  if (rng.empty()) throw invalid_input("quasi-inverse needs a function with nonempty range");
  std::vector<int> pos(static_cast<std::size_t>(f.codomain()->size()), -1);
  for (std::size_t p = 0; p < rng.size(); ++p)
    pos[static_cast<std::size_t>(rng[p])] = static_cast<int>(p);
  std::vector<std::vector<std::int64_t>> out(rng.size());
  for (std::int64_t t = 0; t < f.domain_size(); ++t)
    if (f.defined_at(t))
      out[static_cast<std::size_t>(pos[static_cast<std::size_t>(f.value_at(t))])].push_back(t);
  return out;
}

QuasiInverse::QuasiInverse(TabulatedFn of, std::vector<std::int64_t> choice)
    : of_(std::move(of)), choice_(std::move(choice)) {
  const std::vector<int>& rng = of_.range();
  if (static_cast<int>(rng.size()) == of_.codomain()->size()) {
    range_set_ = of_.codomain();
  } else {
    std::vector<Element> elems;
    elems.reserve(rng.size());
    for (int i : rng) elems.push_back(of_.codomain()->at(i));
    range_set_ = FiniteSet::make(std::move(elems), "ran");
  }
}

QuasiInverse QuasiInverse::canonical(const TabulatedFn& f, bool pick_last) {
  std::vector<std::vector<std::int64_t>> fib = fibers(f);
  std::vector<std::int64_t> choice(fib.size());
  for (std::size_t p = 0; p < fib.size(); ++p)
    choice[p] = pick_last ? fib[p].back() : fib[p].front();
  return QuasiInverse(f, std::move(choice));
}

QuasiInverse QuasiInverse::from_choice(const TabulatedFn& f, std::vector<std::int64_t> choice) {
  std::vector<std::vector<std::int64_t>> fib = fibers(f);
  if (choice.size() != fib.size())
    throw invalid_input("representative list does not match range size");
  for (std::size_t p = 0; p < fib.size(); ++p)
    if (std::find(fib[p].begin(), fib[p].end(), choice[p]) == fib[p].end())
      throw invalid_input("representative " + std::to_string(choice[p]) +
                          " is not a preimage of " +
                          f.codomain()->at(f.range()[p]).str());
  return QuasiInverse(f, std::move(choice));
}

std::string QuasiInverse::count_str(const TabulatedFn& f) {
  BigCount n(1);
  for (const auto& fib : fibers(f)) n.mul(fib.size());
  return n.str();
}

std::vector<QuasiInverse> QuasiInverse::enumerate(const TabulatedFn& f, std::int64_t limit) {
  std::vector<std::vector<std::int64_t>> fib = fibers(f);
  BigCount n(1);
  for (const auto& fb : fib) n.mul(fb.size());
  if (!n.fits_u64(static_cast<std::uint64_t>(limit)))
    throw invalid_input("quasi-inverse count " + n.str() + " exceeds enumeration limit " +
                        std::to_string(limit));
  std::vector<QuasiInverse> out;
  std::vector<std::size_t> at(fib.size(), 0);
  for (;;) {
    std::vector<std::int64_t> choice(fib.size());
    for (std::size_t p = 0; p < fib.size(); ++p) choice[p] = fib[p][at[p]];
    out.push_back(QuasiInverse(f, std::move(choice)));
    std::size_t p = fib.size();
    while (p-- > 0) {
      if (++at[p] < fib[p].size()) break;
      at[p] = 0;
      if (p == 0) return out;
    }
  }
}

std::int64_t QuasiInverse::preimage_of_value(int codomain_index) const {
  const std::vector<int>& rng = of_.range();
  for (std::size_t p = 0; p < rng.size(); ++p)
    if (rng[p] == codomain_index) return choice_[p];
  return -1;
}

TabulatedFn QuasiInverse::g() const {
  if (of_.arity() != 1)
    throw internal_error("materialized quasi-inverse table needs a unary function");
  std::vector<std::int32_t> values(choice_.size());
  for (std::size_t p = 0; p < choice_.size(); ++p)
    values[p] = static_cast<std::int32_t>(choice_[p]);
  return TabulatedFn({range_set_}, of_.domain(0), std::move(values));
}

std::string QuasiInverse::describe() const {
  std::string s;
  for (std::size_t p = 0; p < choice_.size(); ++p) {
    if (p) s += ", ";
    s += range_set_->at(static_cast<int>(p)).str();
    s += " -> ";
    std::vector<int> idx = of_.decode(choice_[p]);
    if (idx.size() == 1) {
      s += of_.domain(0)->at(idx[0]).str();
    } else {
      s += "(";
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) s += ",";
        s += of_.domain(static_cast<int>(k))->at(idx[k]).str();
      }
      s += ")";
    }
  }
  return s;
}

QinvCheck is_quasi_inverse(const TabulatedFn& f, const TabulatedFn& g) {
  if (f.arity() != 1 || g.arity() != 1)
    throw invalid_input("quasi-inverse check expects unary functions");
  if (!f.is_total() || !g.is_total())
    throw invalid_input("quasi-inverse check expects total functions");
  // dom(g) must cover ran(f)
  for (int i : f.range()) {
    const Element& u = f.codomain()->at(i);
    if (!g.domain(0)->contains(u))
      throw invalid_input("domain of candidate misses range value " + u.str());
  }
  // f(g(u)) = u on ran(f)
  for (int i : f.range()) {
    const Element& u = f.codomain()->at(i);
    std::int64_t gu = *g.domain(0)->index_of(u);
    const Element& x = g.element_at(gu);
    auto xi = f.domain(0)->index_of(x);
    if (!xi)
      return {false, "g(" + u.str() + ") = " + x.str() + " lies outside the domain"};
    if (f.element_at(*xi) != u)
      return {false, "f(g(" + u.str() + ")) = " + f.element_at(*xi).str() + " != " + u.str()};
  }
  // every value of g is already attained on ran(f)
  std::unordered_set<int> on_range;
  for (int i : f.range()) {
    const Element& u = f.codomain()->at(i);
    on_range.insert(g.value_at(*g.domain(0)->index_of(u)));
  }
  for (std::int64_t t = 0; t < g.domain_size(); ++t)
    if (!on_range.count(g.value_at(t)))
      return {false, "value " + g.element_at(t).str() + " = g(" +
                         g.domain(0)->at(static_cast<int>(t)).str() +
                         ") is not attained on the range"};
  return {true, ""};
}

} // namespace feq
