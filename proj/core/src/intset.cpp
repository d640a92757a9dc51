#include "sumsetlab/intset.hpp"

#include <algorithm>

#include "sumsetlab/errors.hpp"
#include "text.hpp"

namespace sumsetlab {

namespace {

void require_same_bound(const BoundedIntSet& a, const BoundedIntSet& b, const char* op) {
  if (a.bound() != b.bound()) {
    throw ContractViolation(std::string(op) + ": bounds differ (" + std::to_string(a.bound()) + " vs " +
                            std::to_string(b.bound()) + ")");
  }
}

// Core of every integer sumset: acc becomes (acc u {0}) + (addend u {0}),
// with bit 0 cleared afterwards and everything above the bound dropped.
Bitset shift_or_sum(const Bitset& acc, const Bitset& addend) {
  Bitset base = acc;
  base.set(0);
  Bitset out = base;
  addend.for_each([&](std::size_t a) { out.or_shifted_left(base, a); });
  out.reset(0);
  return out;
}

}  // namespace

BoundedIntSet::BoundedIntSet(std::size_t bound) : bound_(bound), bits_(bound + 1) {
  if (bound == 0) throw ContractViolation("BoundedIntSet: bound must be positive");
}

BoundedIntSet::BoundedIntSet(std::size_t bound, Bitset bits) : bound_(bound), bits_(std::move(bits)) {
  if (bound == 0) throw ContractViolation("BoundedIntSet: bound must be positive");
  if (bits_.size() != bound + 1) throw ContractViolation("BoundedIntSet: bitset size must be bound + 1");
  if (bits_.test(0)) throw ContractViolation("BoundedIntSet: 0 cannot be a member");
}

BoundedIntSet BoundedIntSet::from_members(std::size_t bound, std::span<const std::int64_t> members) {
  BoundedIntSet out(bound);
  for (const auto x : members) {
    if (x < 1 || static_cast<std::uint64_t>(x) > bound) {
      throw RangeError("BoundedIntSet: member " + std::to_string(x) + " outside [1, " + std::to_string(bound) +
                       "]");
    }
    out.bits_.set(static_cast<std::size_t>(x));
  }
  return out;
}

BoundedIntSet BoundedIntSet::from_members(std::size_t bound, std::initializer_list<std::int64_t> members) {
  return from_members(bound, std::span<const std::int64_t>(members.begin(), members.size()));
}

BoundedIntSet BoundedIntSet::interval(std::size_t bound) {
  BoundedIntSet out(bound);
  out.bits_.fill();
  out.bits_.reset(0);
  return out;
}

bool BoundedIntSet::contains(std::int64_t x) const noexcept {
  return x >= 1 && static_cast<std::uint64_t>(x) <= bound_ && bits_.test(static_cast<std::size_t>(x));
}

std::vector<std::int64_t> BoundedIntSet::members() const {
  std::vector<std::int64_t> out;
  out.reserve(size());
  bits_.for_each([&](std::size_t i) { out.push_back(static_cast<std::int64_t>(i)); });
  return out;
}

std::string BoundedIntSet::to_string() const {
  return std::to_string(bound_) + ":" + detail::format_brace_list(members());
}

BoundedIntSet BoundedIntSet::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("integer set: expected 'g:{...}', got '" + std::string(text) + "'");
  const auto bound = detail::parse_integer(text.substr(0, colon), "integer set bound");
  if (bound < 1) throw ParseError("integer set: bound must be positive");
  const auto members = detail::parse_brace_list(text.substr(colon + 1), "integer set");
  try {
    return from_members(static_cast<std::size_t>(bound), members);
  } catch (const RangeError& e) {
    throw ParseError(e.what());
  }
}

std::size_t count(const BoundedIntSet& set, std::int64_t x) {
  if (x < 0 || static_cast<std::uint64_t>(x) > set.bound()) {
    throw RangeError("count: x = " + std::to_string(x) + " outside [0, " + std::to_string(set.bound()) + "]");
  }
  return set.bits().count_prefix(static_cast<std::size_t>(x) + 1);
}

std::vector<std::size_t> prefix_counts(const BoundedIntSet& set) {
  std::vector<std::size_t> out(set.bound() + 1, 0);
  for (std::size_t x = 1; x <= set.bound(); ++x) out[x] = out[x - 1] + (set.bits().test(x) ? 1 : 0);
  return out;
}

BoundedIntSet shnirelman_sumset(std::span<const BoundedIntSet> sets, std::size_t bound) {
  if (sets.empty()) throw ContractViolation("shnirelman_sumset: empty list of summands");
  for (const auto& s : sets) {
    if (s.bound() != bound) {
      throw ContractViolation("shnirelman_sumset: summand bound " + std::to_string(s.bound()) +
                              " differs from " + std::to_string(bound));
    }
  }
  Bitset acc = sets.front().bits();
  for (std::size_t i = 1; i < sets.size(); ++i) acc = shift_or_sum(acc, sets[i].bits());
  return BoundedIntSet(bound, std::move(acc));
}

BoundedIntSet shnirelman_sumset(const BoundedIntSet& a, const BoundedIntSet& b) {
  require_same_bound(a, b, "shnirelman_sumset");
  return BoundedIntSet(a.bound(), shift_or_sum(a.bits(), b.bits()));
}

BoundedIntSet hfold_sumset(const BoundedIntSet& set, std::size_t h, std::size_t bound) {
  if (h == 0) throw ContractViolation("hfold_sumset: h must be at least 1");
  if (set.bound() != bound) throw ContractViolation("hfold_sumset: set bound differs from requested bound");
  Bitset acc = set.bits();
  for (std::size_t i = 1; i < h; ++i) {
    Bitset next = shift_or_sum(acc, set.bits());
    if (next == acc) break;  // fixed point: further summands add nothing
    acc = std::move(next);
  }
  return BoundedIntSet(bound, std::move(acc));
}

BoundedIntSet translate(const BoundedIntSet& set, std::int64_t t, std::size_t bound) {
  if (bound == 0) throw ContractViolation("translate: bound must be positive");
  Bitset src = set.bits().resized(std::max(set.bits().size(), bound + 1));
  Bitset out(src.size());
  if (t >= 0) {
    out.or_shifted_left(src, static_cast<std::size_t>(t));
  } else {
    out.or_shifted_right(src, static_cast<std::size_t>(-t));
  }
  out.reset(0);
  return BoundedIntSet(bound, out.resized(bound + 1));
}

Rational truncated_density(const BoundedIntSet& set) {
  std::size_t best_count = set.bits().test(1) ? 1 : 0;
  std::size_t best_n = 1;
  std::size_t running = 0;
  for (std::size_t n = 1; n <= set.bound(); ++n) {
    running += set.bits().test(n) ? 1 : 0;
    // running/n < best_count/best_n
    if (static_cast<uint128_t>(running) * best_n < static_cast<uint128_t>(best_count) * n) {
      best_count = running;
      best_n = n;
    }
  }
  return {static_cast<std::int64_t>(best_count), static_cast<std::int64_t>(best_n)};
}

bool is_basis_up_to(const BoundedIntSet& set, std::size_t h, std::size_t g) {
  if (h == 0) throw ContractViolation("is_basis_up_to: h must be at least 1");
  if (g < 1 || g > set.bound()) {
    throw RangeError("is_basis_up_to: g = " + std::to_string(g) + " outside [1, " + std::to_string(set.bound()) +
                     "]");
  }
  const auto sum = hfold_sumset(set, h, set.bound());
  return sum.bits().count_prefix(g + 1) == g;
}

BoundedIntSet set_union(const BoundedIntSet& a, const BoundedIntSet& b) {
  require_same_bound(a, b, "set_union");
  return BoundedIntSet(a.bound(), a.bits() | b.bits());
}

BoundedIntSet set_difference(const BoundedIntSet& a, const BoundedIntSet& b) {
  require_same_bound(a, b, "set_difference");
  return BoundedIntSet(a.bound(), a.bits() - b.bits());
}

BoundedIntSet set_intersection(const BoundedIntSet& a, const BoundedIntSet& b) {
  require_same_bound(a, b, "set_intersection");
  return BoundedIntSet(a.bound(), a.bits() & b.bits());
}

bool is_subset(const BoundedIntSet& a, const BoundedIntSet& b) {
  require_same_bound(a, b, "is_subset");
  return a.bits().is_subset_of(b.bits());
}

}  // namespace sumsetlab
