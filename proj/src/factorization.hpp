#pragma once

#include "instance.hpp"
#include "partition.hpp"

#include <string>
#include <vector>

namespace feq {

struct MemberCheck {
  bool ok = true;
  std::string witness; // empty when ok
};

// F_{J,K} as a quotient: F is a member iff it is constant on every block.
struct SolutionClass {
  Partition partition;               // over the full X×Y×Z universe
  TabulatedFn generator;             // B: triple -> block index; partial off D_{J,K}
  std::vector<std::int64_t> domain;  // D_{J,K} flats, ascending (everything when total)
  std::int64_t block_count;          // blocks meeting D_{J,K}
};

SolutionClass solution_partition(const TripleInstance& ins);
SolutionClass solution_partition(const PartialInstance& ins);

// Direct check of the two gluing implications, independent of the partition.
MemberCheck is_member(const TripleInstance& ins, const TabulatedFn& F);
MemberCheck is_member(const PartialInstance& ins, const TabulatedFn& F);

struct OuterPair {
  TabulatedFn G; // on ran(J) × Z
  TabulatedFn H; // on X × ran(K)
};

// G(u,z) = F(φ(u),z), H(x,v) = F(x,ψ(v)) with canonical quasi-inverses φ, ψ;
// the two nested identities are re-verified at every triple.
OuterPair recover_outer(const TripleInstance& ins, const TabulatedFn& F);

// |{members with values in a fixed c-element set}| = c^block_count, as decimal text
std::string count_class(const SolutionClass& sc, std::int64_t c);

} // namespace feq
