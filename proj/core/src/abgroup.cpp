#include "sumsetlab/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "sumsetlab/errors.hpp"
#include "sumsetlab/rational.hpp"
#include "text.hpp"

namespace sumsetlab {

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::size_t> moduli) : moduli_(std::move(moduli)) {
  for (const auto m : moduli_) {
    if (m < 2) throw ContractViolation("FiniteAbelianGroup: every modulus must be at least 2");
    if (order_ > (std::size_t{1} << 40) / m) throw ContractViolation("FiniteAbelianGroup: order too large");
    order_ *= m;
  }
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(std::size_t m) {
  if (m == 1) return {};
  return FiniteAbelianGroup({m});
}

Element FiniteAbelianGroup::add(Element x, Element y) const noexcept {
  if (moduli_.size() == 1) {
    const Element s = x + y;
    return s >= order_ ? s - order_ : s;
  }
  Element result = 0;
  Element scale = 1;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    const std::size_t m = moduli_[i];
    std::size_t digit = x % m + y % m;
    if (digit >= m) digit -= m;
    result += digit * scale;
    scale *= m;
    x /= m;
    y /= m;
  }
  return result;
}

Element FiniteAbelianGroup::negate(Element x) const noexcept {
  Element result = 0;
  Element scale = 1;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    const std::size_t m = moduli_[i];
    const std::size_t digit = x % m;
    result += (digit == 0 ? 0 : m - digit) * scale;
    scale *= m;
    x /= m;
  }
  return result;
}

Element FiniteAbelianGroup::multiply(std::size_t k, Element x) const noexcept {
  Element result = 0;
  Element scale = 1;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    const std::size_t m = moduli_[i];
    const std::size_t digit = static_cast<std::size_t>((static_cast<uint128_t>(k % m) * (x % m)) % m);
    result += digit * scale;
    scale *= m;
    x /= m;
  }
  return result;
}

std::size_t FiniteAbelianGroup::element_order(Element x) const noexcept {
  std::size_t result = 1;
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    const std::size_t m = moduli_[i];
    const std::size_t digit = x % m;
    result = std::lcm(result, m / std::gcd(m, digit));
    x /= m;
  }
  return result;
}

std::vector<std::size_t> FiniteAbelianGroup::coordinates(Element x) const {
  std::vector<std::size_t> coords(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    coords[i] = x % moduli_[i];
    x /= moduli_[i];
  }
  return coords;
}

Element FiniteAbelianGroup::from_coordinates(std::span<const std::size_t> coords) const {
  if (coords.size() != moduli_.size()) throw ContractViolation("from_coordinates: wrong number of coordinates");
  Element result = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (coords[i] >= moduli_[i]) throw RangeError("from_coordinates: coordinate out of range");
    result = result * moduli_[i] + coords[i];
  }
  return result;
}

std::string FiniteAbelianGroup::to_string() const {
  if (moduli_.empty()) return "Z1";
  std::string out;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i != 0) out += 'x';
    out += 'Z' + std::to_string(moduli_[i]);
  }
  return out;
}

FiniteAbelianGroup FiniteAbelianGroup::parse(std::string_view text) {
  std::vector<std::size_t> moduli;
  const std::string original(text);
  while (true) {
    const auto x = text.find('x');
    const auto factor = text.substr(0, x);
    if (factor.size() < 2 || factor.front() != 'Z') {
      throw ParseError("group: expected factors like 'Z6' joined by 'x', got '" + original + "'");
    }
    const auto m = detail::parse_integer(factor.substr(1), "group modulus");
    if (m < 1) throw ParseError("group: modulus must be positive in '" + original + "'");
    if (m > 1) moduli.push_back(static_cast<std::size_t>(m));
    if (x == std::string_view::npos) break;
    text.remove_prefix(x + 1);
  }
  try {
    return FiniteAbelianGroup(std::move(moduli));
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  }
}

// ---------------------------------------------------------------------------
// GroupSubset / Subgroup

GroupSubset::GroupSubset(FiniteAbelianGroup group) : group_(std::move(group)), members_(group_.order()) {}

GroupSubset::GroupSubset(FiniteAbelianGroup group, Bitset members)
    : group_(std::move(group)), members_(std::move(members)) {
  if (members_.size() != group_.order()) throw ContractViolation("GroupSubset: bitset size must equal group order");
}

GroupSubset GroupSubset::from_elements(FiniteAbelianGroup group, std::span<const Element> elements) {
  GroupSubset out(std::move(group));
  for (const auto e : elements) {
    if (e >= out.group_.order()) {
      throw RangeError("GroupSubset: element " + std::to_string(e) + " outside [0, " +
                       std::to_string(out.group_.order()) + ")");
    }
    out.members_.set(e);
  }
  return out;
}

GroupSubset GroupSubset::from_elements(FiniteAbelianGroup group, std::initializer_list<Element> elements) {
  return from_elements(std::move(group), std::span<const Element>(elements.begin(), elements.size()));
}

GroupSubset GroupSubset::whole(FiniteAbelianGroup group) {
  GroupSubset out(std::move(group));
  out.members_.fill();
  return out;
}

std::string GroupSubset::to_string() const {
  return group_.to_string() + ":" + detail::format_brace_list(elements());
}

GroupSubset GroupSubset::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("group subset: expected 'Zm:{...}', got '" + std::string(text) + "'");
  auto group = FiniteAbelianGroup::parse(text.substr(0, colon));
  const auto values = detail::parse_brace_list(text.substr(colon + 1), "group subset");
  std::vector<Element> elements;
  for (const auto v : values) {
    if (v < 0 || static_cast<std::uint64_t>(v) >= group.order()) {
      throw ParseError("group subset: element " + std::to_string(v) + " outside [0, " + std::to_string(group.order()) +
                       ")");
    }
    elements.push_back(static_cast<Element>(v));
  }
  return from_elements(std::move(group), elements);
}

Subgroup::Subgroup(GroupSubset carrier) : carrier_(std::move(carrier)) {
  const auto& group = carrier_.group();
  if (!carrier_.contains(0)) throw ContractViolation("Subgroup: carrier must contain 0");
  const auto elements = carrier_.elements();
  for (const auto x : elements) {
    if (!carrier_.contains(group.negate(x))) throw ContractViolation("Subgroup: carrier not closed under negation");
    for (const auto y : elements) {
      if (!carrier_.contains(group.add(x, y))) throw ContractViolation("Subgroup: carrier not closed under addition");
    }
  }
}

Subgroup Subgroup::trivial(const FiniteAbelianGroup& group) { return Subgroup(GroupSubset::from_elements(group, {0})); }

// ---------------------------------------------------------------------------
// Sums and translates

namespace {

void require_same_group(const GroupSubset& a, const GroupSubset& b, const char* op) {
  if (a.group() != b.group()) {
    throw ContractViolation(std::string(op) + ": subsets live in different groups (" + a.group().to_string() + " vs " +
                            b.group().to_string() + ")");
  }
}

// out |= bits + e
void or_translated(Bitset& out, const Bitset& bits, const FiniteAbelianGroup& group, Element e) {
  if (group.is_cyclic_presentation()) {
    // Rotation by e inside [0, m).
    out.or_shifted_left(bits, e);
    if (e != 0) out.or_shifted_right(bits, group.order() - e);
    return;
  }
  bits.for_each([&](std::size_t x) { out.set(group.add(x, e)); });
}

}  // namespace

GroupSubset minkowski_sum(const GroupSubset& a, const GroupSubset& b) {
  require_same_group(a, b, "minkowski_sum");
  const auto& group = a.group();
  Bitset out(group.order());
  // Iterate over the smaller operand.
  const GroupSubset& outer = a.size() <= b.size() ? a : b;
  const GroupSubset& inner = a.size() <= b.size() ? b : a;
  outer.members().for_each([&](std::size_t x) { or_translated(out, inner.members(), group, x); });
  return {group, std::move(out)};
}

GroupSubset translate_set(const GroupSubset& x, Element e) {
  if (e >= x.group().order()) {
    throw RangeError("translate_set: element " + std::to_string(e) + " not in " + x.group().to_string());
  }
  Bitset out(x.group().order());
  or_translated(out, x.members(), x.group(), e);
  return {x.group(), std::move(out)};
}

GroupSubset set_union(const GroupSubset& a, const GroupSubset& b) {
  require_same_group(a, b, "set_union");
  return {a.group(), a.members() | b.members()};
}

GroupSubset set_intersection(const GroupSubset& a, const GroupSubset& b) {
  require_same_group(a, b, "set_intersection");
  return {a.group(), a.members() & b.members()};
}

GroupSubset set_difference(const GroupSubset& a, const GroupSubset& b) {
  require_same_group(a, b, "set_difference");
  return {a.group(), a.members() - b.members()};
}

// ---------------------------------------------------------------------------
// e-transform

ETransform e_transform(const GroupSubset& a, const GroupSubset& b, Element e) {
  require_same_group(a, b, "e_transform");
  if (a.empty() || b.empty()) throw PreconditionError("e_transform: A and B must be nonempty");
  if (!a.contains(e)) throw PreconditionError("e_transform: e = " + std::to_string(e) + " is not in A");
  const auto& group = a.group();
  return {set_union(a, translate_set(b, e)), set_intersection(b, translate_set(a, group.negate(e)))};
}

ETransformReport check_etransform_identities(const GroupSubset& a, const GroupSubset& b, Element e) {
  const auto [ae, be] = e_transform(a, b, e);
  ETransformReport report;
  report.sum_contained = minkowski_sum(ae, be).members().is_subset_of(minkowski_sum(a, b).members());
  report.exchange_exact = set_difference(ae, a) == translate_set(set_difference(b, be), e);
  report.cardinality_kept = a.size() + b.size() == ae.size() + be.size();
  if (b.contains(0)) report.zero_kept = ae.contains(e) && be.contains(0);
  return report;
}

// ---------------------------------------------------------------------------
// Stabilizers and the subgroup lattice

Subgroup stabilizer(const GroupSubset& x) {
  if (x.empty()) throw PreconditionError("stabilizer: X must be nonempty");
  const auto& group = x.group();
  // Any g with X + g = X sends a fixed x0 into X, so g ranges over X - x0.
  const Element x0 = x.members().find_first();
  Bitset result(group.order());
  x.members().for_each([&](std::size_t y) {
    const Element g = group.subtract(y, x0);
    if (translate_set(x, g) == x) result.set(g);
  });
  return Subgroup(GroupSubset(group, std::move(result)));
}

std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& group, std::size_t cap) {
  if (group.order() > cap) {
    throw ResourceError("enumerate_subgroups: |G| = " + std::to_string(group.order()) + " exceeds cap " +
                            std::to_string(cap),
                        group.order(), cap);
  }
  // Every subgroup of a finite abelian group is the join of the cyclic
  // subgroups it contains, and the join of two subgroups is their sum, so
  // closing the cyclic subgroups under "+ <x>" reaches the whole lattice.
  std::vector<GroupSubset> cyclics;
  std::unordered_set<Bitset, BitsetHash> cyclic_seen;
  for (Element x = 0; x < group.order(); ++x) {
    Bitset bits(group.order());
    Element y = 0;
    do {
      bits.set(y);
      y = group.add(y, x);
    } while (y != 0);
    if (cyclic_seen.insert(bits).second) cyclics.emplace_back(group, std::move(bits));
  }

  std::unordered_set<Bitset, BitsetHash> seen(cyclic_seen);
  std::vector<GroupSubset> all(cyclics);
  std::vector<GroupSubset> frontier(cyclics);
  while (!frontier.empty()) {
    std::vector<GroupSubset> next;
    for (const auto& h : frontier) {
      for (const auto& c : cyclics) {
        if (c.members().is_subset_of(h.members())) continue;
        GroupSubset join = minkowski_sum(h, c);
        if (seen.insert(join.members()).second) {
          all.push_back(join);
          next.push_back(std::move(join));
        }
      }
    }
    frontier = std::move(next);
  }

  std::sort(all.begin(), all.end(), [](const GroupSubset& l, const GroupSubset& r) {
    if (l.size() != r.size()) return l.size() < r.size();
    return l.members() < r.members();
  });
  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (auto& s : all) out.emplace_back(std::move(s));
  return out;
}

// ---------------------------------------------------------------------------
// Theorem checkers

PigeonholeReport check_pigeonhole_cover(const GroupSubset& a, const GroupSubset& b) {
  require_same_group(a, b, "check_pigeonhole_cover");
  if (a.empty() || b.empty()) throw ContractViolation("check_pigeonhole_cover: A and B must be nonempty");
  PigeonholeReport report;
  report.applicable = a.size() + b.size() > a.group().order();
  if (report.applicable) report.holds = minkowski_sum(a, b).size() == a.group().order();
  return report;
}

bool is_prime(std::size_t n) noexcept {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

ChowlaReport check_chowla_cd(std::size_t modulus, const GroupSubset& a, const GroupSubset& b, ChowlaMode mode) {
  require_same_group(a, b, "check_chowla_cd");
  if (a.group() != FiniteAbelianGroup::cyclic(modulus)) {
    throw ContractViolation("check_chowla_cd: subsets must live in Z/" + std::to_string(modulus));
  }
  if (a.empty() || b.empty()) throw ContractViolation("check_chowla_cd: A and B must be nonempty");
  ChowlaReport report;
  report.mode = mode;
  if (mode == ChowlaMode::cauchy_davenport) {
    if (!is_prime(modulus)) {
      throw PreconditionError("check_chowla_cd: Cauchy-Davenport mode requires a prime modulus, got " +
                              std::to_string(modulus));
    }
    report.applicable = true;
  } else {
    if (modulus < 2) {
      report.reason = "modulus must be at least 2";
    } else if (!b.contains(0)) {
      report.reason = "0 is not in B";
    } else {
      report.applicable = true;
      b.members().for_each([&](std::size_t x) {
        if (x != 0 && std::gcd(x, modulus) != 1 && report.applicable) {
          report.applicable = false;
          report.reason = "gcd(" + std::to_string(x) + ", " + std::to_string(modulus) + ") != 1";
        }
      });
    }
  }
  if (!report.applicable) return report;
  report.sum_size = minkowski_sum(a, b).size();
  report.bound = std::min(modulus, a.size() + b.size() - 1);
  report.holds = report.sum_size >= report.bound;
  return report;
}

ChowlaDescentReport check_chowla_descent(const GroupSubset& a, const GroupSubset& b) {
  require_same_group(a, b, "check_chowla_descent");
  ChowlaDescentReport report;
  const auto& group = a.group();
  if (!group.is_cyclic_presentation() || a.empty() || b.size() < 2 || !b.contains(0) ||
      a.size() == group.order()) {
    return report;
  }
  const std::size_t m = group.order();
  bool units = true;
  b.members().for_each([&](std::size_t x) { units = units && (x == 0 || std::gcd(x, m) == 1); });
  if (!units) return report;
  report.applicable = true;
  b.members().for_each([&](std::size_t star) {
    if (star == 0) return;
    // Some e in A leaves A under + b*, i.e. A + b* is not inside A.
    if (translate_set(a, star).members().is_subset_of(a.members())) report.holds = false;
  });
  return report;
}

bool KneserReport::existence_holds() const noexcept {
  if (!existence_applicable) return true;
  if (audit_performed && !audit_holds) return false;
  return witness_holds || audit_performed;
}

KneserReport check_kneser(const GroupSubset& a, const GroupSubset& b,
                          std::optional<std::span<const Subgroup>> lattice) {
  require_same_group(a, b, "check_kneser");
  if (a.empty() || b.empty()) throw ContractViolation("check_kneser: A and B must be nonempty");
  const auto& group = a.group();
  const GroupSubset sum = minkowski_sum(a, b);
  const std::size_t sum_size = sum.size();
  const std::size_t total = a.size() + b.size();
  const Subgroup h = stabilizer(sum);

  KneserReport report;
  report.sum_size = sum_size;
  report.stabilizer_order = h.order();

  report.existence_applicable = total <= group.order();
  if (report.existence_applicable) {
    if (sum_size + 1 >= total) {
      report.witness_order = 1;
      report.witness_holds = true;
      report.tight = sum_size + 1 == total;
    } else {
      report.witness_order = h.order();
      report.witness_holds = h.is_proper() && sum_size + h.order() >= total;
      report.tight = report.witness_holds && sum_size + h.order() == total;
    }

    std::vector<Subgroup> owned;
    std::span<const Subgroup> subgroups;
    if (lattice) {
      subgroups = *lattice;
      report.audit_performed = true;
    } else if (group.order() <= kDefaultSubgroupCap) {
      owned = enumerate_subgroups(group);
      subgroups = owned;
      report.audit_performed = true;
    }
    if (report.audit_performed) {
      for (const auto& candidate : subgroups) {
        if (candidate.is_proper() && sum_size + candidate.order() >= total) ++report.audit_witnesses;
      }
      report.audit_holds = report.audit_witnesses > 0;
      report.curiosity = !report.witness_holds && report.audit_holds;
    }
  }

  report.stabilizer_applicable = sum_size < total;
  if (report.stabilizer_applicable) {
    report.a_plus_h = minkowski_sum(a, h.carrier()).size();
    report.b_plus_h = minkowski_sum(b, h.carrier()).size();
    report.stabilizer_holds = sum_size + h.order() == report.a_plus_h + report.b_plus_h;
  }
  return report;
}

}  // namespace sumsetlab
