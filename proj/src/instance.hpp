#pragma once

#include "tabulated_fn.hpp"

#include <string>
#include <vector>

namespace feq {

// J: X×Y → U_J, K: Y×Z → U_K, both total.
struct TripleInstance {
  std::string name;
  SetPtr X, Y, Z;
  TabulatedFn J, K;

  TripleInstance(std::string name, SetPtr x, SetPtr y, SetPtr z, TabulatedFn j, TabulatedFn k);

  std::vector<SetPtr> xyz() const { return {X, Y, Z}; }
  std::int64_t universe_size() const {
    return static_cast<std::int64_t>(X->size()) * Y->size() * Z->size();
  }
  std::int64_t triple_flat(int x, int y, int z) const {
    return (static_cast<std::int64_t>(x) * Y->size() + y) * Z->size() + z;
  }
  std::string triple_str(std::int64_t flat) const;
};

// J, K on A^{n-1}; the equation lives on A^n with X = Z = A, Y = A^{n-2}.
struct PowerInstance {
  std::string name;
  SetPtr A;
  int n;
  TabulatedFn J, K;

  PowerInstance(std::string name, SetPtr a, int n, TabulatedFn j, TabulatedFn k);

  // curry the middle n-2 coordinates into Y; flat triple order equals the
  // row-major order on A^n, so tables carry over unchanged
  TripleInstance derive() const;
};

// J, K partial; their defined positions are D_J and D_K.
struct PartialInstance {
  std::string name;
  SetPtr X, Y, Z;
  TabulatedFn J, K;

  PartialInstance(std::string name, SetPtr x, SetPtr y, SetPtr z, TabulatedFn j, TabulatedFn k);

  std::vector<SetPtr> xyz() const { return {X, Y, Z}; }
  std::int64_t universe_size() const {
    return static_cast<std::int64_t>(X->size()) * Y->size() * Z->size();
  }
  std::string triple_str(std::int64_t flat) const;
  // restrict K (or J) to a sub-domain given as pair flats; pairs outside the
  // current domain are rejected
  PartialInstance restrict_K(const std::vector<std::int64_t>& pair_flats,
                             const std::string& tag) const;
  PartialInstance restrict_J(const std::vector<std::int64_t>& pair_flats,
                             const std::string& tag) const;
};

// D_{J,K} = {(x,y,z) : (x,y) ∈ D_J, (y,z) ∈ D_K}, ascending flats; error when empty
std::vector<std::int64_t> compute_domain(const PartialInstance& p);

// product set with symbol elements "(a,b,...)" in row-major order
SetPtr tuple_set(const std::vector<SetPtr>& components, const std::string& name);

std::string triple_label(const SetPtr& X, const SetPtr& Y, const SetPtr& Z, std::int64_t flat);

} // namespace feq
