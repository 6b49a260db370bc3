#include "instance.hpp"

#include "errors.hpp"

namespace feq {

namespace {

void check_binary_on(const TabulatedFn& f, const SetPtr& a, const SetPtr& b,
                     const std::string& what) {
  if (f.arity() != 2) throw invalid_input(what + " must take two arguments");
  if (!f.domain(0)->same_elements(*a) || !f.domain(1)->same_elements(*b))
    throw invalid_input(what + " is not defined on the declared sets");
}

} // namespace

std::string triple_label(const SetPtr& X, const SetPtr& Y, const SetPtr& Z, std::int64_t flat) {
  int z = static_cast<int>(flat % Z->size());
  flat /= Z->size();
  int y = static_cast<int>(flat % Y->size());
  int x = static_cast<int>(flat / Y->size());
  return "(" + X->at(x).str() + "," + Y->at(y).str() + "," + Z->at(z).str() + ")";
}

TripleInstance::TripleInstance(std::string name_, SetPtr x, SetPtr y, SetPtr z, TabulatedFn j,
                               TabulatedFn k)
    : name(std::move(name_)), X(std::move(x)), Y(std::move(y)), Z(std::move(z)),
      J(std::move(j)), K(std::move(k)) {
  check_binary_on(J, X, Y, "J");
  check_binary_on(K, Y, Z, "K");
  if (!J.is_total()) throw invalid_input("J must be total on X x Y");
  if (!K.is_total()) throw invalid_input("K must be total on Y x Z");
}

std::string TripleInstance::triple_str(std::int64_t flat) const {
  return triple_label(X, Y, Z, flat);
}

SetPtr tuple_set(const std::vector<SetPtr>& components, const std::string& name) {
  std::int64_t n = 1;
  for (const SetPtr& c : components) n *= c->size();
  std::vector<Element> elems;
  elems.reserve(static_cast<std::size_t>(n));
  std::vector<int> idx(components.size(), 0);
  for (std::int64_t t = 0; t < n; ++t) {
    std::string s = "(";
    for (std::size_t k = 0; k < components.size(); ++k) {
      if (k) s += ",";
      s += components[k]->at(idx[k]).str();
    }
    s += ")";
    elems.push_back(Element::symbol(s));
    for (std::size_t k = components.size(); k-- > 0;) {
      if (++idx[k] < components[k]->size()) break;
      idx[k] = 0;
    }
  }
  return FiniteSet::make(std::move(elems), name);
}

PowerInstance::PowerInstance(std::string name_, SetPtr a, int n_, TabulatedFn j, TabulatedFn k)
    : name(std::move(name_)), A(std::move(a)), n(n_), J(std::move(j)), K(std::move(k)) {
  if (n < 3) throw invalid_input("power instance needs n >= 3");
  if (J.arity() != n - 1 || K.arity() != n - 1)
    throw invalid_input("J and K must take n-1 arguments");
  for (int i = 0; i < n - 1; ++i)
    if (!J.domain(i)->same_elements(*A) || !K.domain(i)->same_elements(*A))
      throw invalid_input("J and K must be defined on powers of A");
  if (!J.is_total() || !K.is_total())
    throw invalid_input("J and K must be total");
}

TripleInstance PowerInstance::derive() const {
  SetPtr Y = A;
  if (n > 3) {
    std::vector<SetPtr> mid(static_cast<std::size_t>(n - 2), A);
    Y = tuple_set(mid, "Y");
  }
  TabulatedFn j2({A, Y}, J.codomain(), J.values());
  TabulatedFn k2({Y, A}, K.codomain(), K.values());
  return TripleInstance(name, A, Y, A, std::move(j2), std::move(k2));
}

PartialInstance::PartialInstance(std::string name_, SetPtr x, SetPtr y, SetPtr z, TabulatedFn j,
                                 TabulatedFn k)
    : name(std::move(name_)), X(std::move(x)), Y(std::move(y)), Z(std::move(z)),
      J(std::move(j)), K(std::move(k)) {
  check_binary_on(J, X, Y, "J");
  check_binary_on(K, Y, Z, "K");
  if (J.defined_count() == 0) throw invalid_input("D_J is empty");
  if (K.defined_count() == 0) throw invalid_input("D_K is empty");
}

std::string PartialInstance::triple_str(std::int64_t flat) const {
  return triple_label(X, Y, Z, flat);
}

namespace {

TabulatedFn restrict_fn(const TabulatedFn& f, const std::vector<std::int64_t>& keep,
                        const std::string& what) {
  std::vector<bool> mark(static_cast<std::size_t>(f.domain_size()), false);
  for (std::int64_t t : keep) {
    if (t < 0 || t >= f.domain_size())
      throw invalid_input(what + " restriction lists a pair outside the universe");
    if (!f.defined_at(t))
      throw invalid_input(what + " restriction lists pair " + f.describe_point(t) +
                          " outside the current domain");
    mark[static_cast<std::size_t>(t)] = true;
  }
  std::vector<std::int32_t> vals(f.values());
  for (std::int64_t t = 0; t < f.domain_size(); ++t)
    if (!mark[static_cast<std::size_t>(t)]) vals[static_cast<std::size_t>(t)] = -1;
  return TabulatedFn(f.domains(), f.codomain(), std::move(vals));
}

} // namespace

PartialInstance PartialInstance::restrict_K(const std::vector<std::int64_t>& pair_flats,
                                            const std::string& tag) const {
  return PartialInstance(name + "/" + tag, X, Y, Z, J, restrict_fn(K, pair_flats, "D_K"));
}

PartialInstance PartialInstance::restrict_J(const std::vector<std::int64_t>& pair_flats,
                                            const std::string& tag) const {
  return PartialInstance(name + "/" + tag, X, Y, Z, restrict_fn(J, pair_flats, "D_J"), K);
}

std::vector<std::int64_t> compute_domain(const PartialInstance& p) {
  std::vector<std::int64_t> out;
  const int ny = p.Y->size(), nz = p.Z->size();
  for (int x = 0; x < p.X->size(); ++x)
    for (int y = 0; y < ny; ++y) {
      if (!p.J.defined_at(static_cast<std::int64_t>(x) * ny + y)) continue;
      for (int z = 0; z < nz; ++z)
        if (p.K.defined_at(static_cast<std::int64_t>(y) * nz + z))
          out.push_back((static_cast<std::int64_t>(x) * ny + y) * nz + z);
    }
  if (out.empty()) throw invalid_input("empty joint domain");
  return out;
}

} // namespace feq
