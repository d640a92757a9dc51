#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumsetlab/intset.hpp"
#include "sumsetlab/ranksum.hpp"
#include "sumsetlab/rational.hpp"

namespace sumsetlab {

/// A triple (a, ell, c) satisfying the four triple conditions against a
/// family (A_1..A_n) with bound g:
///   (i)   c in A_n and 1 <= c <= g
///   (ii)  1 <= ell <= n - 1
///   (iii) a in A_ell u {0}, or a > g
///   (iv)  a + c not in A_ell, or a + c > g
/// Only constructible through make(), which validates.
class DysonTriple {
 public:
  /// PreconditionError if the conditions fail.
  static DysonTriple make(const SetFamily& family, std::int64_t a, std::size_t ell, std::int64_t c);

  std::int64_t a() const noexcept { return a_; }
  std::size_t ell() const noexcept { return ell_; }
  std::int64_t c() const noexcept { return c_; }

 private:
  DysonTriple(std::int64_t a, std::size_t ell, std::int64_t c) : a_(a), ell_(ell), c_(c) {}

  std::int64_t a_;
  std::size_t ell_;
  std::int64_t c_;
};

/// Conditions (i)-(iv). Requires n >= 2 (ContractViolation otherwise).
bool is_dyson_triple(const SetFamily& family, std::int64_t a, std::size_t ell, std::int64_t c);

struct MinimalTriple {
  std::int64_t a0;
  std::size_t ell;
  friend bool operator==(const MinimalTriple&, const MinimalTriple&) = default;
};

/// Smallest a admitting any triple, and the smallest ell admitting a triple
/// with that a. Always a0 <= g + 1. PreconditionError if n < 2 or A_n has
/// no element in [1, g].
MinimalTriple find_minimal_triple(const SetFamily& family);

/// T = {c in A_n : c + a0 not in A_ell, or c + a0 > g}.
BoundedIntSet build_T(const SetFamily& family, std::int64_t a0, std::size_t ell);

struct TransformStep {
  std::int64_t a0;
  std::size_t ell;
  BoundedIntSet T;
  SetFamily before;
  SetFamily after;
};

/// One Dyson transform: A_n -> A_n \ T, A_ell -> A_ell u (T + a0) (truncated
/// to [1, g]), all other sets unchanged.
TransformStep apply_transform(const SetFamily& family);

/// The structural invariants every step must satisfy (T nonempty and inside
/// A_n, the three replacement rules, A_n strictly shrinking).
bool step_invariants_hold(const TransformStep& step);

struct TransformTrace {
  std::vector<TransformStep> steps;
  SetFamily terminal;
};

/// Applies transforms until A_n is empty on [1, g]. Requires n >= 2.
/// Throws std::logic_error if a step ever breaks step_invariants_hold.
TransformTrace iterate_transform(const SetFamily& family);

struct Lemma1Witness {
  std::size_t set_index;  // position in the supplied test collection
  std::int64_t h;
  int part;               // 1: translation claim, 2: pair-sum containment
};

struct LemmaPhiWitness {
  std::size_t r;  // 1 for the rank-1 lower bound
  std::size_t m;
  std::uint64_t before;
  std::uint64_t after;
};

struct LemmaReport {
  std::vector<Lemma1Witness> lemma1;
  std::vector<LemmaPhiWitness> lemma2;  // phi'_r(m) > phi_r(m)
  std::vector<LemmaPhiWitness> lemma3;  // phi'_1(m) < min(1, gamma) m
  std::size_t test_sets = 0;
  bool holds() const noexcept { return lemma1.empty() && lemma2.empty() && lemma3.empty(); }
};

/// Extensional check of the three transform lemmas for one step.
///
/// Lemma 1 is evaluated for every S in `test_sets` (each with the family
/// bound) and every 1 <= h <= g; Lemma 2 over all r <= n, m <= g; Lemma 3
/// against min(1, gamma) where gamma must satisfy phi_1(m) >= gamma m for
/// the step's `before` family.
LemmaReport check_lemmas(const TransformStep& step, const Rational& gamma,
                         std::span<const BoundedIntSet> test_sets);

/// The Lemma 1 test collection: every subset of [1, g] when g <= 6;
/// otherwise the empty set, every rank sum S_I of the family, and
/// `random_sets` subsets drawn from a generator seeded with `seed`.
std::vector<BoundedIntSet> lemma1_test_sets(const SetFamily& family, std::uint64_t seed,
                                            std::size_t random_sets = 32);

}  // namespace sumsetlab
