#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace uniflab {

// Fixed-width bit vector over Z2.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return w_[i / 64] >> (i % 64) & 1; }
  void flip(std::size_t i) { w_[i / 64] ^= std::uint64_t(1) << (i % 64); }
  void set(std::size_t i, bool v) {
    if (test(i) != v) flip(i);
  }

  void operator^=(const BitVec& other) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= other.w_[i];
  }

  bool any() const {
    for (std::uint64_t w : w_)
      if (w) return true;
    return false;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  // Index of the lowest set bit, or size() when none.
  std::size_t first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return i * 64 + static_cast<std::size_t>(__builtin_ctzll(w_[i]));
    return n_;
  }

  bool operator==(const BitVec&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace uniflab
