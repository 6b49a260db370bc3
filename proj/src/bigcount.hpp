#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace feq {

// Unbounded nonnegative counter for class sizes (products of small factors).
class BigCount {
public:
  explicit BigCount(std::uint64_t v = 0) {
    while (v) {
      limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
      v /= kBase;
    }
  }

  void mul(std::uint64_t m) {
    std::uint64_t carry = 0;
    for (std::uint32_t& limb : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
      limb = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
    while (carry) {
      limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
      carry /= kBase;
    }
  }

  bool fits_u64(std::uint64_t cap) const {
    if (limbs_.size() > 3) return false;
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
      if (v > cap / kBase) return false;
      v = v * kBase + limbs_[i];
      if (v > cap) return false;
    }
    return true;
  }

  std::string str() const {
    if (limbs_.empty()) return "0";
    std::string s = std::to_string(limbs_.back());
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
      std::string part = std::to_string(limbs_[i]);
      s += std::string(9 - part.size(), '0') + part;
    }
    return s;
  }

private:
  static constexpr std::uint64_t kBase = 1000000000;
  std::vector<std::uint32_t> limbs_; // little-endian, base 1e9
};

} // namespace feq
