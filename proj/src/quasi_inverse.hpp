#pragma once

#include "tabulated_fn.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace feq {

// Quasi-inverse g of a total f: dom(g) = ran(f), f(g(u)) = u for every u in
// ran(f).  Held as one chosen flat preimage per range value; g() materializes
// the table when f is unary.
class QuasiInverse {
public:
  static QuasiInverse canonical(const TabulatedFn& f, bool pick_last = false);
  static QuasiInverse from_choice(const TabulatedFn& f, std::vector<std::int64_t> choice);
  // all of Q(f) in lexicographic order of fiber positions; throws when the
  // count ∏ |fiber| exceeds limit
  static std::vector<QuasiInverse> enumerate(const TabulatedFn& f, std::int64_t limit);
  static std::string count_str(const TabulatedFn& f); // ∏ |fiber| as decimal text

  const TabulatedFn& of() const { return of_; }
  const SetPtr& range_set() const { return range_set_; } // dom(g)
  const std::vector<std::int64_t>& choice() const { return choice_; }
  std::int64_t choice_at(int range_pos) const {
    return choice_[static_cast<std::size_t>(range_pos)];
  }
  // flat preimage for a codomain value index, -1 when the value is not attained
  std::int64_t preimage_of_value(int codomain_index) const;
  TabulatedFn g() const; // unary f only
  std::string describe() const;

private:
  QuasiInverse(TabulatedFn of, std::vector<std::int64_t> choice);
  TabulatedFn of_;
  SetPtr range_set_;
  std::vector<std::int64_t> choice_;
};

// preimage flats grouped by range position, ascending within each fiber
std::vector<std::vector<std::int64_t>> fibers(const TabulatedFn& f);

struct QinvCheck {
  bool ok = false;
  std::string witness; // empty when ok
};

// Both defining conditions for unary total f, g with dom(g) ⊇ ran(f).
QinvCheck is_quasi_inverse(const TabulatedFn& f, const TabulatedFn& g);

} // namespace feq
