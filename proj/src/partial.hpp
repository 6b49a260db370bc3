#pragma once

#include "instance.hpp"
#include "quasi_inverse.hpp"
#include "reductions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace feq {

// the range condition with both ranges taken inside the declared domains:
// ran(K) = ran(K_2^a) over D_K (K side), ran(J) = ran(J_1^b) over D_J (J side)
bool partial_range_condition(const PartialInstance& p, Side side, const Element& base);

struct PartialReduction {
  Side side;
  Element base;
  QuasiInverse qinv;  // of the section restricted to the declared domain
  TabulatedFn map;    // R_k / S_j, defined wherever the expression stays in D_J / D_K
  std::vector<std::int64_t> domain;     // D_{J,K} as ascending triple flats
  std::vector<std::int64_t> qualifying; // triples of D_{J,K} where the map is defined
  TabulatedFn f;                        // factor with F = f∘map on the qualifying set
  std::string note;
};

// factors a member F through the reduction at the base point; the identity
// holds on the qualifying set, which can be a strict subset of D_{J,K}
PartialReduction partial_reduce(const PartialInstance& p, const TabulatedFn& F, Side side,
                                const Element& base, bool tie_last = false);

struct MergedClass {
  int id = 0;
  std::vector<std::pair<int, int>> keys; // (part index, value index in that factor)
  std::int32_t value = -1;               // shared factor value, -1 under conflict
  std::int64_t first_flat = -1;          // smallest covered triple
};

struct MergeReport {
  std::string status; // merged | merged-partial | conflict
  std::vector<std::string> conflicts;
  std::vector<std::int64_t> uncovered; // joint-domain triples no part reaches
  std::int64_t covered = 0;
  std::int64_t domain_size = 0;
  std::vector<MergedClass> classes;
  std::optional<TabulatedFn> key_map; // universe → class set, on covered triples
  std::optional<TabulatedFn> f;       // class set → values, absent under conflict
};

// glues the parts' (part, value) keys along shared qualifying triples; when
// the glued classes carry consistent factor values the result is one factor
// through the pieced-together key map, total iff the parts cover D_{J,K}
MergeReport merge_partial_reductions(const PartialInstance& p,
                                     const std::vector<PartialReduction>& parts);

} // namespace feq
