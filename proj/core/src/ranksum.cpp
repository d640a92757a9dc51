#include "sumsetlab/ranksum.hpp"

#include <algorithm>
#include <bit>

#include "sumsetlab/errors.hpp"
#include "text.hpp"

namespace sumsetlab {

SetFamily::SetFamily(std::size_t bound, std::vector<BoundedIntSet> sets) : bound_(bound), sets_(std::move(sets)) {
  if (sets_.empty()) throw ContractViolation("SetFamily: needs at least one set");
  for (const auto& s : sets_) {
    if (s.bound() != bound_) {
      throw ContractViolation("SetFamily: set bound " + std::to_string(s.bound()) + " differs from family bound " +
                              std::to_string(bound_));
    }
  }
}

const BoundedIntSet& SetFamily::set(std::size_t i) const {
  if (i < 1 || i > sets_.size()) {
    throw RangeError("SetFamily: index " + std::to_string(i) + " outside [1, " + std::to_string(sets_.size()) + "]");
  }
  return sets_[i - 1];
}

SetFamily SetFamily::with_set(std::size_t i, BoundedIntSet replacement) const {
  (void)set(i);
  auto sets = sets_;
  sets[i - 1] = std::move(replacement);
  return {bound_, std::move(sets)};
}

std::string SetFamily::to_string() const {
  std::string out = "g=" + std::to_string(bound_);
  for (const auto& s : sets_) out += ";" + detail::format_brace_list(s.members());
  return out;
}

SetFamily SetFamily::parse(std::string_view text) {
  if (!text.starts_with("g=")) throw ParseError("family: expected 'g=<bound>;{...};...', got '" + std::string(text) + "'");
  text.remove_prefix(2);
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("family: needs at least one set");
  const auto bound = detail::parse_integer(text.substr(0, semi), "family bound");
  if (bound < 1) throw ParseError("family: bound must be positive");
  std::vector<BoundedIntSet> sets;
  text.remove_prefix(semi + 1);
  while (true) {
    semi = text.find(';');
    const auto members = detail::parse_brace_list(text.substr(0, semi), "family set");
    try {
      sets.push_back(BoundedIntSet::from_members(static_cast<std::size_t>(bound), members));
    } catch (const RangeError& e) {
      throw ParseError(std::string("family: ") + e.what());
    }
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return {static_cast<std::size_t>(bound), std::move(sets)};
}

std::vector<IndexSet> rank_subsets(std::size_t n, std::size_t r) {
  if (r == 0 || r > n) {
    throw ContractViolation("rank_subsets: requires 1 <= r <= n (got n=" + std::to_string(n) +
                            ", r=" + std::to_string(r) + ")");
  }
  std::vector<IndexSet> out;
  IndexSet current(r);
  for (std::size_t i = 0; i < r; ++i) current[i] = i + 1;
  while (true) {
    out.push_back(current);
    // Advance the rightmost position that still has room.
    std::size_t pos = r;
    while (pos > 0 && current[pos - 1] == n - r + pos) --pos;
    if (pos == 0) break;
    ++current[pos - 1];
    for (std::size_t j = pos; j < r; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

BoundedIntSet rank_sum(const SetFamily& family, const IndexSet& indices) {
  std::vector<BoundedIntSet> summands;
  summands.reserve(indices.size());
  for (const auto i : indices) summands.push_back(family.set(i));
  return shnirelman_sumset(summands, family.bound());
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

RankProfile::RankProfile(const SetFamily& family)
    : n_(family.size()), bound_(family.bound()), table_(n_ * (family.bound() + 1), 0) {
  if (n_ > 20) throw ContractViolation("RankProfile: n > 20 is not supported");
  const std::size_t subsets = std::size_t{1} << n_;
  std::vector<Bitset> sums(subsets);
  std::vector<std::size_t> prefix(bound_ + 1);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::size_t rest = mask & (mask - 1);
    if (rest == 0) {
      sums[mask] = family.sets()[low].bits();
    } else {
      sums[mask] = shnirelman_sumset(BoundedIntSet(bound_, sums[rest]), family.sets()[low]).bits();
    }
    const auto r = static_cast<std::size_t>(std::popcount(mask));
    std::uint64_t* row = &table_[(r - 1) * (bound_ + 1)];
    std::uint64_t running = 0;
    for (std::size_t m = 1; m <= bound_; ++m) {
      running += sums[mask].test(m) ? 1 : 0;
      row[m] += running;
    }
  }
}

std::uint64_t RankProfile::phi(std::size_t r, std::size_t m) const {
  if (r < 1 || r > n_) throw RangeError("phi: r = " + std::to_string(r) + " outside [1, " + std::to_string(n_) + "]");
  if (m > bound_) throw RangeError("phi: m = " + std::to_string(m) + " outside [0, " + std::to_string(bound_) + "]");
  return table_[(r - 1) * (bound_ + 1) + m];
}

std::uint64_t phi(const SetFamily& family, std::size_t r, std::size_t m) {
  if (r < 1 || r > family.size()) {
    throw RangeError("phi: r = " + std::to_string(r) + " outside [1, " + std::to_string(family.size()) + "]");
  }
  if (m < 1 || m > family.bound()) {
    throw RangeError("phi: m = " + std::to_string(m) + " outside [1, " + std::to_string(family.bound()) + "]");
  }
  std::uint64_t total = 0;
  for (const auto& subset : rank_subsets(family.size(), r)) {
    total += count(rank_sum(family, subset), static_cast<std::int64_t>(m));
  }
  return total;
}

namespace {

Rational gamma_from_profile(const RankProfile& profile) {
  Rational best(static_cast<std::int64_t>(profile.phi(1, 1)));
  for (std::size_t m = 2; m <= profile.bound(); ++m) {
    const Rational ratio(static_cast<std::int64_t>(profile.phi(1, m)), static_cast<std::int64_t>(m));
    best = std::min(best, ratio);
  }
  return best;
}

}  // namespace

Rational gamma_star(const SetFamily& family) {
  std::vector<std::vector<std::size_t>> counts;
  counts.reserve(family.size());
  for (const auto& s : family.sets()) counts.push_back(prefix_counts(s));
  std::optional<Rational> best;
  for (std::size_t m = 1; m <= family.bound(); ++m) {
    std::int64_t phi1 = 0;
    for (const auto& c : counts) phi1 += static_cast<std::int64_t>(c[m]);
    const Rational ratio(phi1, static_cast<std::int64_t>(m));
    if (!best || ratio < *best) best = ratio;
  }
  return *best;
}

BoundReport check_dyson_bound(const RankProfile& profile, const Rational& gamma) {
  BoundReport report;
  report.gamma_star = gamma;
  const Rational delta = std::min(Rational(1), gamma);
  const std::size_t n = profile.n();
  for (std::size_t r = 1; r <= n; ++r) {
    const Rational coefficient = Rational(static_cast<std::int64_t>(binomial(n - 1, r - 1))) * delta;
    for (std::size_t m = 1; m <= profile.bound(); ++m) {
      const std::uint64_t lhs = profile.phi(r, m);
      const Rational rhs = coefficient * Rational(static_cast<std::int64_t>(m));
      const Rational value(static_cast<std::int64_t>(lhs));
      if (value < rhs) {
        report.holds = false;
        report.violations.push_back({r, m, lhs, rhs});
      } else if (r >= 2 && value == rhs) {
        report.tight.emplace_back(r, m);
      }
    }
  }
  return report;
}

BoundReport check_dyson_bound(const SetFamily& family) {
  const RankProfile profile(family);
  return check_dyson_bound(profile, gamma_from_profile(profile));
}

MannReport check_mann(const BoundedIntSet& a, const BoundedIntSet& b, std::size_t n) {
  if (a.bound() != b.bound()) throw ContractViolation("check_mann: A and B must share a bound");
  if (n < 1 || n > a.bound()) {
    throw RangeError("check_mann: n = " + std::to_string(n) + " outside [1, " + std::to_string(a.bound()) + "]");
  }
  const BoundedIntSet c = shnirelman_sumset(a, b);
  MannReport report;
  report.n = n;
  report.sum_count = count(c, static_cast<std::int64_t>(n));
  report.full = report.sum_count == n;

  std::size_t a_count = 0;
  std::size_t b_count = 0;
  std::optional<Rational> gamma;
  for (std::size_t m = 1; m <= n; ++m) {
    a_count += a.bits().test(m) ? 1 : 0;
    b_count += b.bits().test(m) ? 1 : 0;
    const Rational ratio(static_cast<std::int64_t>(a_count + b_count), static_cast<std::int64_t>(m));
    if (!gamma || ratio < *gamma) gamma = ratio;
    if (!c.bits().test(m) && (!report.gap_minimum || ratio < *report.gap_minimum)) report.gap_minimum = ratio;
  }
  report.gamma = *gamma;

  const Rational density(static_cast<std::int64_t>(report.sum_count), static_cast<std::int64_t>(n));
  // An empty gap set means C(n) = n, so the first alternative already holds.
  report.fundamental_holds = report.full || !report.gap_minimum || density >= *report.gap_minimum;
  report.corollary_holds = density >= std::min(Rational(1), report.gamma);
  return report;
}

ShnirelmanPrefixReport check_shnirelman_prefix(const BoundedIntSet& a, const BoundedIntSet& b) {
  if (a.bound() != b.bound()) throw ContractViolation("check_shnirelman_prefix: A and B must share a bound");
  ShnirelmanPrefixReport report;
  report.alpha = truncated_density(a);
  report.beta = truncated_density(b);
  report.coefficient = report.alpha + report.beta - report.alpha * report.beta;
  const BoundedIntSet c = shnirelman_sumset(a, b);
  std::size_t running = 0;
  for (std::size_t m = 1; m <= a.bound(); ++m) {
    running += c.bits().test(m) ? 1 : 0;
    if (Rational(static_cast<std::int64_t>(running)) < report.coefficient * Rational(static_cast<std::int64_t>(m))) {
      report.holds = false;
      report.first_violation = m;
      break;
    }
  }
  return report;
}

}  // namespace sumsetlab
