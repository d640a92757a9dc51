#include "sumsetlab/density.hpp"

#include <algorithm>

#include "sumsetlab/errors.hpp"
#include "text.hpp"

namespace sumsetlab {

EventuallyPeriodicSet::EventuallyPeriodicSet(std::size_t threshold, Bitset head, std::size_t period,
                                             Bitset residues)
    : threshold_(threshold), head_(std::move(head)), period_(period), residues_(std::move(residues)) {
  if (period_ == 0) throw ContractViolation("EventuallyPeriodicSet: period must be at least 1");
  if (head_.size() != threshold_ + 1) throw ContractViolation("EventuallyPeriodicSet: head size must be N + 1");
  if (residues_.size() != period_) throw ContractViolation("EventuallyPeriodicSet: residue bitset size must be m");
  normalize();
}

EventuallyPeriodicSet EventuallyPeriodicSet::from_lists(std::size_t threshold, std::span<const std::int64_t> head,
                                                        std::size_t period,
                                                        std::span<const std::int64_t> residues) {
  if (period == 0) throw ContractViolation("EventuallyPeriodicSet: period must be at least 1");
  Bitset head_bits(threshold + 1);
  for (const auto h : head) {
    if (h < 0 || static_cast<std::uint64_t>(h) > threshold) {
      throw RangeError("EventuallyPeriodicSet: head member " + std::to_string(h) + " outside [0, " +
                       std::to_string(threshold) + "]");
    }
    head_bits.set(static_cast<std::size_t>(h));
  }
  Bitset residue_bits(period);
  for (const auto r : residues) {
    if (r < 0 || static_cast<std::uint64_t>(r) >= period) {
      throw RangeError("EventuallyPeriodicSet: residue " + std::to_string(r) + " outside [0, " +
                       std::to_string(period) + ")");
    }
    residue_bits.set(static_cast<std::size_t>(r));
  }
  return {threshold, std::move(head_bits), period, std::move(residue_bits)};
}

void EventuallyPeriodicSet::normalize() {
  // Smallest d | m such that R is d-periodic.
  for (std::size_t d = 1; d < period_; ++d) {
    if (period_ % d != 0) continue;
    bool periodic = true;
    for (std::size_t r = 0; r < period_ && periodic; ++r) periodic = residues_.test(r) == residues_.test(r % d);
    if (periodic) {
      residues_ = residues_.resized(d);
      period_ = d;
      break;
    }
  }
  // Lower N while head(N) already follows the residue rule.
  std::size_t n = threshold_;
  while (n > 0 && head_.test(n) == residues_.test(n % period_)) --n;
  if (n != threshold_) {
    head_ = head_.resized(n + 1);
    threshold_ = n;
  }
}

bool EventuallyPeriodicSet::contains(std::uint64_t n) const noexcept {
  if (n <= threshold_) return head_.test(static_cast<std::size_t>(n));
  return residues_.test(static_cast<std::size_t>(n % period_));
}

std::string EventuallyPeriodicSet::to_string() const {
  return std::to_string(threshold_) + ":" + detail::format_brace_list(head_.indices()) + "|" +
         std::to_string(period_) + ":" + detail::format_brace_list(residues_.indices());
}

EventuallyPeriodicSet EventuallyPeriodicSet::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw ParseError("periodic set: expected 'N:{head}|m:{residues}', got '" + std::string(text) + "'");
  }
  const auto split = [&](std::string_view part, const char* what) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) throw ParseError(std::string(what) + ": missing ':' in '" + std::string(part) + "'");
    return std::pair{detail::parse_integer(part.substr(0, colon), what),
                     detail::parse_brace_list(part.substr(colon + 1), what)};
  };
  const auto [threshold, head] = split(text.substr(0, bar), "periodic set head");
  const auto [period, residues] = split(text.substr(bar + 1), "periodic set tail");
  if (threshold < 0) throw ParseError("periodic set: threshold must be nonnegative");
  if (period < 1) throw ParseError("periodic set: period must be positive");
  try {
    return from_lists(static_cast<std::size_t>(threshold), head, static_cast<std::size_t>(period), residues);
  } catch (const RangeError& e) {
    throw ParseError(e.what());
  }
}

std::uint64_t count_ep(const EventuallyPeriodicSet& set, std::uint64_t n) {
  const std::uint64_t threshold = set.threshold();
  if (n <= threshold) return set.head().count_prefix(static_cast<std::size_t>(n) + 1) - (set.head().test(0) ? 1 : 0);

  std::uint64_t total = set.head().count() - (set.head().test(0) ? 1 : 0);
  // Tail (threshold, n]: count integers x in that range with x mod m in R.
  const std::uint64_t m = set.period();
  const auto upto = [&](std::uint64_t x) {
    // members of the residue pattern in [0, x]
    const std::uint64_t full = (x + 1) / m;
    const std::uint64_t rest = (x + 1) % m;
    return full * set.residues().count() + set.residues().count_prefix(static_cast<std::size_t>(rest));
  };
  total += upto(n) - upto(threshold);
  return total;
}

Rational shnirelman_density(const EventuallyPeriodicSet& set) {
  // For n >= N the deviation S(n) - (|R|/m) n is periodic in n with period m,
  // since each further period adds exactly |R| members. Writing
  // S(n)/n = |R|/m + p(n)/n with p periodic: a residue class with p < 0 has
  // its most negative p(n)/n at the smallest n in the class, which lies in
  // [N+1, N+m]; a class with p >= 0 stays above |R|/m and tends to it. Hence
  // the infimum is min(min_{1 <= n <= N+m} S(n)/n, |R|/m).
  const Rational limit = lower_density(set);
  Rational best = limit;
  const std::uint64_t horizon = set.threshold() + set.period();
  std::uint64_t running = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    running += set.contains(n) ? 1 : 0;
    const Rational ratio(static_cast<std::int64_t>(running), static_cast<std::int64_t>(n));
    if (ratio < best) best = ratio;
  }
  return best;
}

Rational lower_density(const EventuallyPeriodicSet& set) {
  return {static_cast<std::int64_t>(set.residues().count()), static_cast<std::int64_t>(set.period())};
}

CongruenceExample congruence_example(std::size_t k, std::size_t l, std::size_t m) {
  if (k == 0 || l == 0 || m == 0) throw PreconditionError("congruence_example: k, l, m must be positive");
  if (k + l > m) {
    throw PreconditionError("congruence_example: requires k + l <= m (got k=" + std::to_string(k) +
                            ", l=" + std::to_string(l) + ", m=" + std::to_string(m) + ")");
  }
  const auto block = [m](std::size_t width) {
    Bitset head(1);
    head.set(0);
    Bitset residues(m);
    for (std::size_t r = 0; r < width; ++r) residues.set(r);
    return EventuallyPeriodicSet(0, std::move(head), m, std::move(residues));
  };
  return {block(k), block(l), block(k + l - 1),
          Rational(static_cast<std::int64_t>(k + l - 1), static_cast<std::int64_t>(m))};
}

}  // namespace sumsetlab
