#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sumsetlab/intset.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

/// An ordered tuple (A_1, ..., A_n), n >= 1, of sets sharing one bound g.
/// Sets may repeat or be empty. Indices in this API are 1-based, matching
/// the index sets produced by rank_subsets and the `ell` of a transform.
class SetFamily {
 public:
  /// Throws ContractViolation if `sets` is empty or the bounds disagree.
  SetFamily(std::size_t bound, std::vector<BoundedIntSet> sets);

  std::size_t bound() const noexcept { return bound_; }
  std::size_t size() const noexcept { return sets_.size(); }
  /// A_i for 1 <= i <= n; RangeError otherwise.
  const BoundedIntSet& set(std::size_t i) const;
  const std::vector<BoundedIntSet>& sets() const noexcept { return sets_; }

  /// Copy with A_i replaced.
  SetFamily with_set(std::size_t i, BoundedIntSet replacement) const;

  /// `g=5;{1,2};{1};{2,5}`.
  std::string to_string() const;
  static SetFamily parse(std::string_view text);

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  std::size_t bound_;
  std::vector<BoundedIntSet> sets_;
};

/// A 1-based index subset I of {1, ..., n}, ascending.
using IndexSet = std::vector<std::size_t>;

/// All C(n, r) r-element subsets of {1..n} in lexicographic order.
/// ContractViolation unless 1 <= r <= n.
std::vector<IndexSet> rank_subsets(std::size_t n, std::size_t r);

/// The rank sum S_I = sum of A_i over i in I (0-adjoined convention).
BoundedIntSet rank_sum(const SetFamily& family, const IndexSet& indices);

std::uint64_t binomial(std::size_t n, std::size_t k);

/// phi_r(m) for every 1 <= r <= n and 0 <= m <= g.
///
/// Built from the sumsets S_I of all 2^n - 1 nonempty index subsets, each
/// obtained from a smaller one by adding a single set, so the cost is
/// 2^n sumsets rather than sum_r C(n,r) r of them. Keep n <= 20.
class RankProfile {
 public:
  explicit RankProfile(const SetFamily& family);

  std::size_t n() const noexcept { return n_; }
  std::size_t bound() const noexcept { return bound_; }
  /// RangeError unless 1 <= r <= n and 0 <= m <= g.
  std::uint64_t phi(std::size_t r, std::size_t m) const;

 private:
  std::size_t n_;
  std::size_t bound_;
  std::vector<std::uint64_t> table_;  // (r - 1) * (g + 1) + m
};

/// phi_r(m) = sum over I in I(r) of S_I(m), computed directly from
/// rank_subsets. Same preconditions as RankProfile::phi with m >= 1.
std::uint64_t phi(const SetFamily& family, std::size_t r, std::size_t m);

/// min over 1 <= m <= g of phi_1(m)/m.
Rational gamma_star(const SetFamily& family);

struct BoundViolation {
  std::size_t r;
  std::size_t m;
  std::uint64_t lhs;
  Rational rhs;
};

struct BoundReport {
  Rational gamma_star;
  bool holds = true;
  std::vector<BoundViolation> violations;
  /// (r, m) pairs with r >= 2 where phi_r(m) equals the bound exactly.
  std::vector<std::pair<std::size_t, std::size_t>> tight;
};

/// Checks phi_r(m) >= C(n-1, r-1) min(1, gamma) m for all r, m with
/// gamma = gamma_star(family). Violations are collected, not thrown.
BoundReport check_dyson_bound(const SetFamily& family);
/// Same check against a precomputed profile and an explicit gamma.
BoundReport check_dyson_bound(const RankProfile& profile, const Rational& gamma);

struct MannReport {
  std::size_t n = 0;
  std::size_t sum_count = 0;               // C(n)
  bool full = false;                       // C(n) == n
  std::optional<Rational> gap_minimum;     // min over m <= n, m not in C, of (A(m)+B(m))/m
  bool fundamental_holds = false;
  Rational gamma;                          // min over m <= n of (A(m)+B(m))/m
  bool corollary_holds = false;            // C(n) >= min(1, gamma) n
  bool holds() const noexcept { return fundamental_holds && corollary_holds; }
};

/// Mann's fundamental theorem and its finite corollary at a single n.
/// A and B must share a bound g >= n >= 1 (RangeError / ContractViolation).
MannReport check_mann(const BoundedIntSet& a, const BoundedIntSet& b, std::size_t n);

struct ShnirelmanPrefixReport {
  Rational alpha;
  Rational beta;
  Rational coefficient;  // alpha + beta - alpha beta
  bool holds = true;
  std::optional<std::size_t> first_violation;
};

/// (A+B)(m) >= (alpha + beta - alpha beta) m for all m <= g, where alpha and
/// beta are the truncated densities of A and B.
ShnirelmanPrefixReport check_shnirelman_prefix(const BoundedIntSet& a, const BoundedIntSet& b);

}  // namespace sumsetlab
