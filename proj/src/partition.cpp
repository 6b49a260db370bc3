#include "partition.hpp"

#include "errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace feq {

PartitionBuilder::PartitionBuilder(std::int64_t n)
    : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
  if (n <= 0) throw invalid_input("partition universe must be nonempty");
  for (std::int64_t i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
}

std::int64_t PartitionBuilder::find(std::int64_t x) {
  std::int64_t root = x;
  while (parent_[static_cast<std::size_t>(root)] != root)
    root = parent_[static_cast<std::size_t>(root)];
  while (parent_[static_cast<std::size_t>(x)] != root) {
    std::int64_t next = parent_[static_cast<std::size_t>(x)];
    parent_[static_cast<std::size_t>(x)] = root;
    x = next;
  }
  return root;
}

void PartitionBuilder::merge(std::int64_t a, std::int64_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
  parent_[static_cast<std::size_t>(b)] = a;
  if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)])
    ++rank_[static_cast<std::size_t>(a)];
}

Partition::Partition(PartitionBuilder& b) {
  const std::int64_t n = static_cast<std::int64_t>(b.parent_.size());
  block_of_.assign(static_cast<std::size_t>(n), -1);
  // first pass in universe order assigns block numbers by smallest member
  std::vector<std::int32_t> root_block(static_cast<std::size_t>(n), -1);
  std::int32_t next = 0;
  for (std::int64_t x = 0; x < n; ++x) {
    std::int64_t r = b.find(x);
    if (root_block[static_cast<std::size_t>(r)] < 0) {
      root_block[static_cast<std::size_t>(r)] = next++;
      blocks_.emplace_back();
    }
    std::int32_t k = root_block[static_cast<std::size_t>(r)];
    block_of_[static_cast<std::size_t>(x)] = k;
    blocks_[static_cast<std::size_t>(k)].push_back(x);
  }
}

Partition Partition::discrete(std::int64_t n) {
  PartitionBuilder b(n);
  return Partition(b);
}

bool Partition::refines(const Partition& coarser) const {
  if (universe_size() != coarser.universe_size()) return false;
  for (const auto& blk : blocks_) {
    std::int32_t target = coarser.block_of(blk.front());
    for (std::int64_t x : blk)
      if (coarser.block_of(x) != target) return false;
  }
  return true;
}

Partition kernel_partition(const TabulatedFn& f) {
  if (!f.is_total()) throw invalid_input("kernel requires total function");
  PartitionBuilder b(f.domain_size());
  std::unordered_map<std::int32_t, std::int64_t> first_with_value;
  for (std::int64_t t = 0; t < f.domain_size(); ++t) {
    if (!f.defined_at(t)) continue;
    auto [it, fresh] = first_with_value.try_emplace(f.value_at(t), t);
    if (!fresh) b.merge(it->second, t);
  }
  return Partition(b);
}

Partition join_partitions(const Partition& p, const Partition& q) {
  if (p.universe_size() != q.universe_size())
    throw internal_error("join of partitions over different universes");
  PartitionBuilder b(p.universe_size());
  std::vector<std::int64_t> p_first(static_cast<std::size_t>(p.block_count()), -1);
  std::vector<std::int64_t> q_first(static_cast<std::size_t>(q.block_count()), -1);
  for (std::int64_t x = 0; x < p.universe_size(); ++x) {
    std::int64_t& pf = p_first[static_cast<std::size_t>(p.block_of(x))];
    if (pf < 0) pf = x; else b.merge(pf, x);
    std::int64_t& qf = q_first[static_cast<std::size_t>(q.block_of(x))];
    if (qf < 0) qf = x; else b.merge(qf, x);
  }
  return Partition(b);
}

} // namespace feq
