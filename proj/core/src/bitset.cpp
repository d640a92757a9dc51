#include "sumsetlab/bitset.hpp"

#include <algorithm>

namespace sumsetlab {

namespace {

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + Bitset::kWordBits - 1) / Bitset::kWordBits;
}

}  // namespace

Bitset::Bitset(std::size_t size) : size_(size), words_(words_for(size), 0) {}

void Bitset::clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

void Bitset::fill() noexcept {
  std::fill(words_.begin(), words_.end(), ~Word{0});
  trim();
}

void Bitset::trim() noexcept {
  const std::size_t tail = size_ % kWordBits;
  if (tail != 0 && !words_.empty()) {
    words_.back() &= (Word{1} << tail) - 1;
  }
}

std::size_t Bitset::count() const noexcept {
  std::size_t total = 0;
  for (const Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t Bitset::count_prefix(std::size_t end) const noexcept {
  end = std::min(end, size_);
  const std::size_t full = end / kWordBits;
  std::size_t total = 0;
  for (std::size_t w = 0; w < full; ++w) total += static_cast<std::size_t>(std::popcount(words_[w]));
  const std::size_t tail = end % kWordBits;
  if (tail != 0) {
    total += static_cast<std::size_t>(std::popcount(words_[full] & ((Word{1} << tail) - 1)));
  }
  return total;
}

bool Bitset::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

bool Bitset::is_subset_of(const Bitset& other) const noexcept {
  const std::size_t common = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < common; ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  for (std::size_t w = common; w < words_.size(); ++w) {
    if (words_[w] != 0) return false;
  }
  return true;
}

bool Bitset::intersects(const Bitset& other) const noexcept {
  const std::size_t common = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < common; ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

void Bitset::or_shifted_left(const Bitset& other, std::size_t shift) noexcept {
  const std::size_t word_shift = shift / kWordBits;
  const std::size_t bit_shift = shift % kWordBits;
  const std::size_t n = words_.size();
  if (word_shift >= n) return;
  const std::size_t src_n = other.words_.size();
  for (std::size_t src = 0; src < src_n; ++src) {
    const Word w = other.words_[src];
    if (w == 0) continue;
    const std::size_t dst = src + word_shift;
    if (dst >= n) break;
    words_[dst] |= w << bit_shift;
    if (bit_shift != 0 && dst + 1 < n) words_[dst + 1] |= w >> (kWordBits - bit_shift);
  }
  trim();
}

void Bitset::or_shifted_right(const Bitset& other, std::size_t shift) noexcept {
  const std::size_t word_shift = shift / kWordBits;
  const std::size_t bit_shift = shift % kWordBits;
  const std::size_t src_n = other.words_.size();
  const std::size_t n = words_.size();
  for (std::size_t src = word_shift; src < src_n; ++src) {
    const Word w = other.words_[src];
    if (w == 0) continue;
    const std::size_t dst = src - word_shift;
    if (dst < n) words_[dst] |= w >> bit_shift;
    if (bit_shift != 0 && dst >= 1 && dst - 1 < n) words_[dst - 1] |= w << (kWordBits - bit_shift);
  }
  trim();
}

Bitset Bitset::shifted_left(std::size_t shift) const {
  Bitset out(size_);
  out.or_shifted_left(*this, shift);
  return out;
}

Bitset Bitset::shifted_right(std::size_t shift) const {
  Bitset out(size_);
  out.or_shifted_right(*this, shift);
  return out;
}

Bitset Bitset::resized(std::size_t new_size) const {
  Bitset out(new_size);
  const std::size_t common = std::min(words_.size(), out.words_.size());
  std::copy_n(words_.begin(), common, out.words_.begin());
  out.trim();
  return out;
}

Bitset& Bitset::operator|=(const Bitset& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

Bitset& Bitset::operator&=(const Bitset& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

Bitset& Bitset::operator-=(const Bitset& other) noexcept {
  assert(size_ == other.size_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

bool operator<(const Bitset& lhs, const Bitset& rhs) noexcept {
  if (lhs.size_ != rhs.size_) return lhs.size_ < rhs.size_;
  for (std::size_t w = lhs.words_.size(); w-- > 0;) {
    if (lhs.words_[w] != rhs.words_[w]) return lhs.words_[w] < rhs.words_[w];
  }
  return false;
}

std::size_t Bitset::find_next(std::size_t from) const noexcept {
  if (from >= size_) return npos;
  std::size_t w = from / kWordBits;
  Word bits = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (bits != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
    if (++w >= words_.size()) return npos;
    bits = words_[w];
  }
}

std::vector<std::size_t> Bitset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::size_t Bitset::hash() const noexcept {
  // FNV-1a over the words, seeded with the size.
  std::uint64_t h = 1469598103934665603ULL ^ size_;
  for (const Word w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace sumsetlab
