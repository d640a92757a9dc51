#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumsetlab/bitset.hpp"

namespace sumsetlab {

/// Element of a FiniteAbelianGroup as its mixed-radix index in [0, order).
using Element = std::size_t;

/// Z/m_1 x ... x Z/m_k with every m_i >= 2; the empty product is the
/// trivial group.
///
/// The element with coordinates (x_1, ..., x_k) has index
/// x_1 * (m_2 ... m_k) + ... + x_k, so the first factor is most
/// significant and for a cyclic group the index is the residue itself.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;  // trivial group
  explicit FiniteAbelianGroup(std::vector<std::size_t> moduli);
  static FiniteAbelianGroup cyclic(std::size_t m);

  std::span<const std::size_t> moduli() const noexcept { return moduli_; }
  std::size_t order() const noexcept { return order_; }
  bool is_cyclic_presentation() const noexcept { return moduli_.size() <= 1; }

  Element add(Element x, Element y) const noexcept;
  Element negate(Element x) const noexcept;
  Element subtract(Element x, Element y) const noexcept { return add(x, negate(y)); }
  /// k * x.
  Element multiply(std::size_t k, Element x) const noexcept;
  /// Smallest j >= 1 with j * x = 0.
  std::size_t element_order(Element x) const noexcept;

  std::vector<std::size_t> coordinates(Element x) const;
  Element from_coordinates(std::span<const std::size_t> coords) const;

  /// `Z6`, `Z2xZ2`; the trivial group prints as `Z1`.
  std::string to_string() const;
  /// Accepts the to_string() form; `Z1` factors are dropped.
  static FiniteAbelianGroup parse(std::string_view text);

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<std::size_t> moduli_;
  std::size_t order_ = 1;
};

/// A subset of a finite abelian group, stored as a bitset over element indices.
class GroupSubset {
 public:
  /// The empty subset.
  explicit GroupSubset(FiniteAbelianGroup group);
  /// `members` must have size group.order().
  GroupSubset(FiniteAbelianGroup group, Bitset members);
  /// RangeError if an element is outside [0, order).
  static GroupSubset from_elements(FiniteAbelianGroup group, std::span<const Element> elements);
  static GroupSubset from_elements(FiniteAbelianGroup group, std::initializer_list<Element> elements);
  static GroupSubset whole(FiniteAbelianGroup group);

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  const Bitset& members() const noexcept { return members_; }
  bool contains(Element x) const noexcept { return x < members_.size() && members_.test(x); }
  std::size_t size() const noexcept { return members_.count(); }
  bool empty() const noexcept { return members_.none(); }
  std::vector<Element> elements() const { return members_.indices(); }

  /// `Z6:{0,3}`.
  std::string to_string() const;
  static GroupSubset parse(std::string_view text);

  friend bool operator==(const GroupSubset&, const GroupSubset&) = default;

 private:
  FiniteAbelianGroup group_;
  Bitset members_;
};

/// A subgroup; construction verifies it contains 0 and is closed under
/// addition and negation (ContractViolation otherwise).
class Subgroup {
 public:
  explicit Subgroup(GroupSubset carrier);
  static Subgroup trivial(const FiniteAbelianGroup& group);

  const GroupSubset& carrier() const noexcept { return carrier_; }
  std::size_t order() const noexcept { return carrier_.size(); }
  bool is_proper() const noexcept { return carrier_.size() < carrier_.group().order(); }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;

 private:
  GroupSubset carrier_;
};

/// {a + b : a in A, b in B}; empty if either input is empty.
/// ContractViolation if the groups differ.
GroupSubset minkowski_sum(const GroupSubset& a, const GroupSubset& b);

/// X + e. RangeError if e is not an element of the group.
GroupSubset translate_set(const GroupSubset& x, Element e);

GroupSubset set_union(const GroupSubset& a, const GroupSubset& b);
GroupSubset set_intersection(const GroupSubset& a, const GroupSubset& b);
GroupSubset set_difference(const GroupSubset& a, const GroupSubset& b);

struct ETransform {
  GroupSubset a;  // A(e) = A u (B + e)
  GroupSubset b;  // B(e) = B n (A - e)
};

/// PreconditionError unless A, B are nonempty and e is in A.
ETransform e_transform(const GroupSubset& a, const GroupSubset& b, Element e);

struct ETransformReport {
  bool sum_contained = true;    // A(e) + B(e) within A + B
  bool exchange_exact = true;   // A(e) \ A = e + (B \ B(e))
  bool cardinality_kept = true; // |A| + |B| = |A(e)| + |B(e)|
  bool zero_kept = true;        // 0 in B implies e in A(e) and 0 in B(e)
  bool holds() const noexcept { return sum_contained && exchange_exact && cardinality_kept && zero_kept; }
};

ETransformReport check_etransform_identities(const GroupSubset& a, const GroupSubset& b, Element e);

/// H(X) = {g : X + g = X}. PreconditionError if X is empty.
Subgroup stabilizer(const GroupSubset& x);

inline constexpr std::size_t kDefaultSubgroupCap = 64;

/// Every subgroup of G, sorted by order then by membership bits. ResourceError
/// if |G| exceeds `cap`.
std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& group, std::size_t cap = kDefaultSubgroupCap);

struct PigeonholeReport {
  bool applicable = false;  // |A| + |B| > |G|
  bool holds = true;        // A + B = G whenever applicable
};

PigeonholeReport check_pigeonhole_cover(const GroupSubset& a, const GroupSubset& b);

enum class ChowlaMode { chowla, cauchy_davenport };

struct ChowlaReport {
  ChowlaMode mode = ChowlaMode::chowla;
  bool applicable = false;
  std::string reason;       // why not applicable
  std::size_t sum_size = 0; // |A + B|
  std::size_t bound = 0;    // min(m, |A| + |B| - 1)
  bool holds = true;
  bool tight() const noexcept { return applicable && sum_size == bound; }
};

/// |A + B| >= min(m, |A| + |B| - 1) in Z/m.
///
/// Chowla mode is not applicable unless 0 is in B and every nonzero b in B
/// is a unit mod m. Cauchy-Davenport mode requires m prime
/// (PreconditionError otherwise). Both require a cyclic group matching
/// `modulus` and nonempty A, B (ContractViolation otherwise).
ChowlaReport check_chowla_cd(std::size_t modulus, const GroupSubset& a, const GroupSubset& b, ChowlaMode mode);

struct ChowlaDescentReport {
  bool applicable = false;  // Chowla preconditions, |B| >= 2, A != G
  bool holds = true;        // every nonzero b* in B has some e in A with e + b* outside A
};

ChowlaDescentReport check_chowla_descent(const GroupSubset& a, const GroupSubset& b);

struct KneserReport {
  // Existence form, hypothesis |A| + |B| <= |G|.
  bool existence_applicable = false;
  std::size_t witness_order = 0;       // |H| of the primary witness ({0} or H(A+B))
  bool witness_holds = true;
  bool audit_performed = false;
  bool audit_holds = true;             // some proper subgroup satisfies the inequality
  std::size_t audit_witnesses = 0;
  bool curiosity = false;              // primary witness failed but the lattice scan found one
  // Stabilizer form, hypothesis |A + B| < |A| + |B|.
  bool stabilizer_applicable = false;
  std::size_t sum_size = 0;
  std::size_t stabilizer_order = 0;
  std::size_t a_plus_h = 0;
  std::size_t b_plus_h = 0;
  bool stabilizer_holds = true;
  /// Existence passes when the primary witness works, or when it fails but
  /// the lattice audit finds another proper subgroup (flagged as curiosity).
  bool existence_holds() const noexcept;
  bool holds() const noexcept { return existence_holds() && stabilizer_holds; }
  /// |A + B| = |A| + |B| - |H| for the primary witness.
  bool tight = false;
};

/// Both Kneser statements for (A, B). The lattice audit uses `lattice` when
/// given, otherwise enumerates subgroups if |G| <= kDefaultSubgroupCap and
/// skips the audit above that.
KneserReport check_kneser(const GroupSubset& a, const GroupSubset& b,
                          std::optional<std::span<const Subgroup>> lattice = std::nullopt);

bool is_prime(std::size_t n) noexcept;

}  // namespace sumsetlab
