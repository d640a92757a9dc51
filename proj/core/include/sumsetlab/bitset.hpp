#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sumsetlab {

/// Runtime-sized bitset over [0, size()). Bits at positions >= size() are
/// always zero, so word-level comparisons and popcounts are exact.
///
/// This is the carrier for every set in the library; the shift-or kernels
/// below are what sumsets are built from.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Bitset() = default;
  explicit Bitset(std::size_t size);

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept {
    assert(i < size_);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i) noexcept {
    assert(i < size_);
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
  }
  void reset(std::size_t i) noexcept {
    assert(i < size_);
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
  }
  void assign(std::size_t i, bool value) noexcept {
    if (value) {
      set(i);
    } else {
      reset(i);
    }
  }

  void clear() noexcept;
  void fill() noexcept;

  std::size_t count() const noexcept;
  /// Number of set bits in [0, end); end is clamped to size().
  std::size_t count_prefix(std::size_t end) const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }

  bool is_subset_of(const Bitset& other) const noexcept;
  bool intersects(const Bitset& other) const noexcept;

  /// *this |= (other << shift), dropping bits that land at or above size().
  /// `other` may have a different size.
  void or_shifted_left(const Bitset& other, std::size_t shift) noexcept;
  /// *this |= (other >> shift); bits shifted below zero are dropped.
  void or_shifted_right(const Bitset& other, std::size_t shift) noexcept;

  Bitset shifted_left(std::size_t shift) const;
  Bitset shifted_right(std::size_t shift) const;
  /// Same bits in a bitset of a different size (truncating or zero-extending).
  Bitset resized(std::size_t new_size) const;

  Bitset& operator|=(const Bitset& other) noexcept;
  Bitset& operator&=(const Bitset& other) noexcept;
  /// Set difference.
  Bitset& operator-=(const Bitset& other) noexcept;

  friend Bitset operator|(Bitset lhs, const Bitset& rhs) { return lhs |= rhs; }
  friend Bitset operator&(Bitset lhs, const Bitset& rhs) { return lhs &= rhs; }
  friend Bitset operator-(Bitset lhs, const Bitset& rhs) { return lhs -= rhs; }

  friend bool operator==(const Bitset&, const Bitset&) = default;
  /// Lexicographic by size, then by words from the top; gives a total order
  /// usable as a map key.
  friend bool operator<(const Bitset& lhs, const Bitset& rhs) noexcept;

  std::size_t find_first() const noexcept { return find_next(0); }
  /// First set bit at position >= from, or npos.
  std::size_t find_next(std::size_t from) const noexcept;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * kWordBits + bit);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> mutable_words() noexcept { return words_; }
  /// Clears any bits above size(); call after writing through mutable_words().
  void trim() noexcept;

  std::size_t hash() const noexcept;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

}  // namespace sumsetlab
