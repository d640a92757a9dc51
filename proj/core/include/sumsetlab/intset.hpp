#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumsetlab/bitset.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

/// A finite set of positive integers drawn from [1, g].
///
/// Bit i of bits() is membership of the integer i; bit 0 exists so that
/// shifts line up with values but is never set (0 is adjoined only inside
/// sumset operations). Immutable once built.
class BoundedIntSet {
 public:
  /// The empty set with bound g. Throws ContractViolation if g == 0.
  explicit BoundedIntSet(std::size_t bound);
  /// Adopts `bits`, which must have size bound + 1 and bit 0 clear.
  BoundedIntSet(std::size_t bound, Bitset bits);

  /// Throws RangeError if any member lies outside [1, bound].
  static BoundedIntSet from_members(std::size_t bound, std::span<const std::int64_t> members);
  static BoundedIntSet from_members(std::size_t bound, std::initializer_list<std::int64_t> members);
  /// {1, ..., g}.
  static BoundedIntSet interval(std::size_t bound);

  std::size_t bound() const noexcept { return bound_; }
  const Bitset& bits() const noexcept { return bits_; }

  /// Membership; false for anything outside [1, bound].
  bool contains(std::int64_t x) const noexcept;
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  std::vector<std::int64_t> members() const;

  /// Canonical text form `g:{a,b,c}`, ascending, no whitespace.
  std::string to_string() const;
  static BoundedIntSet parse(std::string_view text);

  friend bool operator==(const BoundedIntSet&, const BoundedIntSet&) = default;

 private:
  std::size_t bound_;
  Bitset bits_;
};

/// A(x) = |{a in A : 1 <= a <= x}|. Throws RangeError unless 0 <= x <= bound.
std::size_t count(const BoundedIntSet& set, std::int64_t x);

/// Table of A(x) for x = 0..bound.
std::vector<std::size_t> prefix_counts(const BoundedIntSet& set);

/// {a_1 + ... + a_h : a_i in A_i u {0}} restricted to [1, g].
///
/// Every set must have bound g and the list must be nonempty
/// (ContractViolation otherwise). An empty summand contributes only 0.
BoundedIntSet shnirelman_sumset(std::span<const BoundedIntSet> sets, std::size_t bound);
BoundedIntSet shnirelman_sumset(const BoundedIntSet& a, const BoundedIntSet& b);

/// h copies of A under the 0-adjoined convention. h == 0 is a ContractViolation.
BoundedIntSet hfold_sumset(const BoundedIntSet& set, std::size_t h, std::size_t bound);

/// {a + t : a in A} restricted to [1, bound]; images outside are dropped.
BoundedIntSet translate(const BoundedIntSet& set, std::int64_t t, std::size_t bound);

/// min over 1 <= n <= g of A(n)/n: the finite-prefix stand-in for the
/// Shnirel'man density.
Rational truncated_density(const BoundedIntSet& set);

/// True iff hA contains every integer in [1, g]. Requires h >= 1 and
/// 1 <= g <= A.bound().
bool is_basis_up_to(const BoundedIntSet& set, std::size_t h, std::size_t g);

BoundedIntSet set_union(const BoundedIntSet& a, const BoundedIntSet& b);
BoundedIntSet set_difference(const BoundedIntSet& a, const BoundedIntSet& b);
BoundedIntSet set_intersection(const BoundedIntSet& a, const BoundedIntSet& b);
bool is_subset(const BoundedIntSet& a, const BoundedIntSet& b);

}  // namespace sumsetlab
