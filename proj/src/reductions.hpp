#pragma once

#include "factorization.hpp"
#include "instance.hpp"
#include "quasi_inverse.hpp"

#include <optional>
#include <string>
#include <vector>

namespace feq {

enum class Side { K, J };

inline const char* side_str(Side s) { return s == Side::K ? "K" : "J"; }

// R_k(x,y,z) = J(x, k∘K(y,z)) on the K side, S_j(x,y,z) = K(j∘J(x,y), z) on
// the J side.
struct Reduction {
  Side side;
  Element base;
  QuasiInverse qinv; // of the section K_2^a / J_1^b
  TabulatedFn map;   // X×Y×Z → U_J (K side) or U_K (J side)
};

TabulatedFn section_at(const TabulatedFn& f, int position, const Element& a);

// ran(K) = ran(K_2^a) (K side) or ran(J) = ran(J_1^b) (J side)
bool range_condition(const TripleInstance& ins, Side side, const Element& base);
// first value in the full range missing from the section's range; empty when none
std::string range_condition_witness(const TabulatedFn& full, const TabulatedFn& sec);

// the reduction map for an explicit section quasi-inverse table qg; partial
// J/K leave the map undefined where the expression leaves their domains
TabulatedFn reduction_map(const SetPtr& X, const SetPtr& Y, const SetPtr& Z,
                          const TabulatedFn& J, const TabulatedFn& K, Side side,
                          const TabulatedFn& qg);

Reduction build_reduction(const TripleInstance& ins, Side side, const Element& base,
                          bool tie_last = false);

struct ReducedMember {
  Reduction reduction;
  TabulatedFn f;          // partial on U_J/U_K, defined exactly on ran(map)
  std::int64_t k_checked; // quasi-inverses of the section verified
  bool all_k_verified;    // false when the count exceeded the enumeration limit
  std::string note;
};

// f with F = f∘R_k, verified for every quasi-inverse of the section when the
// enumeration fits the limit
ReducedMember reduce_member(const TripleInstance& ins, const TabulatedFn& F, Side side,
                            const Element& base, bool tie_last = false,
                            std::int64_t enumerate_limit = 4096);

struct BaseTrial {
  Side side;
  Element base;
  bool range_ok = false;
  std::string range_witness; // value in ran \ ran(section) when !range_ok
  bool member = false;
  std::string member_witness;
  bool kernel_matches = false; // ker(map) == solution partition
};

struct CharacterizationReport {
  std::string status; // characterized | characterized-as-constants | necessary-only |
                      // no-range-condition
  std::optional<Reduction> reduction; // first characterizing one in canonical order
  std::vector<std::pair<Side, Element>> also_characterizing;
  bool generator_agreement = false;
  bool prop11 = false; // some K-side and J-side maps coincide pointwise
  std::vector<BaseTrial> trials;
  std::int64_t block_count = 0;
};

// exhaustive base-point search over Z (K side) then X (J side)
CharacterizationReport characterize(const TripleInstance& ins, bool tie_last = false);

} // namespace feq
