#pragma once

#include "tabulated_fn.hpp"

#include <cstdint>
#include <vector>

namespace feq {

// Union-find over {0,..,n-1}; freeze() renumbers blocks so block k is the one
// whose smallest member is the k-th smallest among block minima.
class PartitionBuilder {
public:
  explicit PartitionBuilder(std::int64_t n);
  std::int64_t find(std::int64_t x);
  void merge(std::int64_t a, std::int64_t b);

private:
  friend class Partition;
  std::vector<std::int64_t> parent_;
  std::vector<std::int32_t> rank_;
};

class Partition {
public:
  explicit Partition(PartitionBuilder& b);
  // identity partition: every point its own block
  static Partition discrete(std::int64_t n);

  std::int64_t universe_size() const { return static_cast<std::int64_t>(block_of_.size()); }
  std::int64_t block_count() const { return static_cast<std::int64_t>(blocks_.size()); }
  std::int32_t block_of(std::int64_t x) const { return block_of_[static_cast<std::size_t>(x)]; }
  const std::vector<std::int64_t>& block(std::int64_t k) const {
    return blocks_[static_cast<std::size_t>(k)];
  }
  const std::vector<std::vector<std::int64_t>>& blocks() const { return blocks_; }

  bool operator==(const Partition& o) const { return block_of_ == o.block_of_; }
  bool operator!=(const Partition& o) const { return !(*this == o); }
  // every block of *this contained in a block of coarser
  bool refines(const Partition& coarser) const;

private:
  Partition() = default;
  std::vector<std::int32_t> block_of_;
  std::vector<std::vector<std::int64_t>> blocks_;
};

// Partition of f's flat domain by value; rejects partial functions.
Partition kernel_partition(const TabulatedFn& f);

Partition join_partitions(const Partition& p, const Partition& q);

} // namespace feq
