#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "sumsetlab/bitset.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

/// A set of nonnegative integers given by an explicit head on [0, N] and a
/// residue pattern R modulo m that decides every n > N: n is a member iff
/// (n mod m) is in R.
///
/// The constructor normalizes to a canonical form: m is reduced to the
/// smallest period of R, then N is lowered while the head's top element
/// already agrees with the residue rule. Two sets are equal as sets iff
/// they compare equal.
class EventuallyPeriodicSet {
 public:
  /// `head` must have size threshold + 1; `residues` must have size period,
  /// period >= 1. Throws ContractViolation otherwise.
  EventuallyPeriodicSet(std::size_t threshold, Bitset head, std::size_t period, Bitset residues);

  /// Convenience constructor from member lists; head members must lie in
  /// [0, threshold] and residues in [0, period).
  static EventuallyPeriodicSet from_lists(std::size_t threshold, std::span<const std::int64_t> head,
                                          std::size_t period, std::span<const std::int64_t> residues);

  std::size_t threshold() const noexcept { return threshold_; }
  std::size_t period() const noexcept { return period_; }
  const Bitset& head() const noexcept { return head_; }
  const Bitset& residues() const noexcept { return residues_; }

  bool contains(std::uint64_t n) const noexcept;

  /// `N:{head}|m:{residues}`, e.g. `0:{}|2:{1}` for the odd numbers.
  std::string to_string() const;
  static EventuallyPeriodicSet parse(std::string_view text);

  friend bool operator==(const EventuallyPeriodicSet&, const EventuallyPeriodicSet&) = default;

 private:
  void normalize();

  std::size_t threshold_;
  Bitset head_;
  std::size_t period_;
  Bitset residues_;
};

/// |{s in S : 1 <= s <= n}|; 0 is never counted. O(N + m).
std::uint64_t count_ep(const EventuallyPeriodicSet& set, std::uint64_t n);

/// Exact Shnirel'man density inf_{n >= 1} S(n)/n.
Rational shnirelman_density(const EventuallyPeriodicSet& set);

/// Lower asymptotic density; for an eventually periodic set this is |R|/m.
Rational lower_density(const EventuallyPeriodicSet& set);

/// The pair of residue-block sets A = {n : n mod m < k}, B = {n : n mod m < l}
/// (both containing 0), their sumset, and the predicted density (k+l-1)/m of
/// the sumset.
struct CongruenceExample {
  EventuallyPeriodicSet a;
  EventuallyPeriodicSet b;
  EventuallyPeriodicSet sum;
  Rational predicted;
};

/// Requires k, l, m >= 1 and k + l <= m; PreconditionError otherwise.
CongruenceExample congruence_example(std::size_t k, std::size_t l, std::size_t m);

}  // namespace sumsetlab
