#pragma once

#include "tabulated_fn.hpp"

#include <optional>
#include <string>

namespace feq {

struct BuilderParams {
  std::optional<std::int64_t> n; // modulus for mod_add / mod_diff / mod_mul
  std::optional<std::int64_t> q; // grid denominator for the 1/q-grid family
  std::optional<std::int64_t> i; // coordinate for proj
  std::optional<Rational> M;     // cap for truncated_max1
};

// Expand a named builder into an explicit table on the given sets.  Every
// computed value must be an element of the codomain; anything else is an
// invalid_input naming the offending value.
TabulatedFn build_function(const std::string& builder, const std::vector<SetPtr>& args,
                           const SetPtr& codomain, const BuilderParams& params);

bool is_known_builder(const std::string& builder);

} // namespace feq
