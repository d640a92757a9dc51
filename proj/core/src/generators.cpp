#include "sumsetlab/generators.hpp"

#include <cstdlib>
#include <limits>

#include "sumsetlab/errors.hpp"
#include "text.hpp"

namespace sumsetlab::harness {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

std::uint64_t sat_pow2(std::size_t bits) { return bits >= 64 ? kSaturated : std::uint64_t{1} << bits; }

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = sat_mul(out, base);
  return out;
}

std::size_t congruence_m_min(const GeneratorConfig& c) { return std::max<std::size_t>(2, c.g_min); }

SetFamily family_from_mask(std::size_t g, std::size_t n, std::uint64_t mask) {
  std::vector<BoundedIntSet> sets;
  sets.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Bitset bits(g + 1);
    for (std::size_t x = 1; x <= g; ++x) {
      if ((mask >> (i * g + (x - 1))) & 1U) bits.set(x);
    }
    sets.emplace_back(g, std::move(bits));
  }
  return {g, std::move(sets)};
}

GroupSubset subset_from_mask(const FiniteAbelianGroup& group, std::uint64_t mask) {
  Bitset bits(group.order());
  for (std::size_t x = 0; x < group.order(); ++x) {
    if ((mask >> x) & 1U) bits.set(x);
  }
  return {group, std::move(bits)};
}

Bitset bits_from_mask(std::size_t size, std::uint64_t mask) {
  Bitset bits(size);
  for (std::size_t x = 0; x < size; ++x) {
    if ((mask >> x) & 1U) bits.set(x);
  }
  return bits;
}

void validate(InstanceKind kind, const GeneratorConfig& c) {
  if (c.g_min > c.g_max) throw ContractViolation("generator: g_min > g_max");
  if (c.n_min > c.n_max) throw ContractViolation("generator: n_min > n_max");
  switch (kind) {
    case InstanceKind::family:
      if (c.g_min < 1) throw ContractViolation("generator: families need g >= 1");
      if (c.n_min < 1) throw ContractViolation("generator: families need n >= 1");
      break;
    case InstanceKind::group_pair:
      if (c.groups.empty()) throw ContractViolation("generator: group pairs need at least one group");
      break;
    case InstanceKind::periodic_set:
      if (c.n_min < 1) throw ContractViolation("generator: periodic sets need period >= 1");
      break;
    case InstanceKind::congruence:
      if (c.g_max < 2) throw ContractViolation("generator: congruence triples need m_max >= 2");
      break;
  }
}

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ContractViolation("Rng::below: bound must be positive");
  const std::uint64_t limit = kSaturated - (kSaturated % bound + 1) % bound;
  while (true) {
    const std::uint64_t draw = engine_();
    if (draw <= limit) return draw % bound;
  }
}

bool Rng::bernoulli(double probability) {
  if (probability <= 0.0) return false;
  if (probability >= 1.0) return true;
  const auto threshold = static_cast<std::uint64_t>(probability * 18446744073709551616.0);
  return engine_() < threshold;
}

std::string encode(const Instance& instance) {
  return std::visit(
      [](const auto& value) -> std::string {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, GroupPair>) {
          return value.a.to_string() + ";" + detail::format_brace_list(value.b.elements());
        } else if constexpr (std::is_same_v<T, CongruenceParams>) {
          return "k=" + std::to_string(value.k) + ",l=" + std::to_string(value.l) + ",m=" + std::to_string(value.m);
        } else {
          return value.to_string();
        }
      },
      instance);
}

Instance decode(InstanceKind kind, std::string_view text) {
  switch (kind) {
    case InstanceKind::family:
      return SetFamily::parse(text);
    case InstanceKind::periodic_set:
      return EventuallyPeriodicSet::parse(text);
    case InstanceKind::group_pair: {
      const auto semi = text.find(';');
      if (semi == std::string_view::npos) throw ParseError("group pair: expected 'Zm:{...};{...}'");
      GroupSubset a = GroupSubset::parse(text.substr(0, semi));
      GroupSubset b = GroupSubset::parse(a.group().to_string() + ":" + std::string(text.substr(semi + 1)));
      return GroupPair{std::move(a), std::move(b)};
    }
    case InstanceKind::congruence: {
      CongruenceParams p{};
      std::size_t* slots[] = {&p.k, &p.l, &p.m};
      const char* names[] = {"k=", "l=", "m="};
      std::string_view rest = text;
      for (int i = 0; i < 3; ++i) {
        if (!rest.starts_with(names[i])) throw ParseError("congruence: expected 'k=..,l=..,m=..'");
        rest.remove_prefix(2);
        const auto comma = rest.find(',');
        const auto v = detail::parse_integer(rest.substr(0, comma), "congruence parameter");
        if (v < 1) throw ParseError("congruence: parameters must be positive");
        *slots[i] = static_cast<std::size_t>(v);
        if (i < 2) {
          if (comma == std::string_view::npos) throw ParseError("congruence: expected 'k=..,l=..,m=..'");
          rest.remove_prefix(comma + 1);
        } else if (comma != std::string_view::npos) {
          throw ParseError("congruence: trailing text");
        }
      }
      return p;
    }
  }
  throw ParseError("unknown instance kind");
}

std::uint64_t budget_from_environment() {
  if (const char* env = std::getenv("SUMSETLAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return kDefaultBudget;
}

std::uint64_t exhaustive_count(InstanceKind kind, const GeneratorConfig& c) {
  std::uint64_t total = 0;
  switch (kind) {
    case InstanceKind::family:
      for (std::size_t g = c.g_min; g <= c.g_max; ++g) {
        for (std::size_t n = c.n_min; n <= c.n_max; ++n) {
          total = sat_add(total, c.nonempty_sets ? sat_pow(sat_pow2(g) - 1, n) : sat_pow2(g * n));
        }
      }
      break;
    case InstanceKind::group_pair:
      for (const auto& group : c.groups) {
        const std::uint64_t subsets = sat_pow2(group.order()) - 1;
        total = sat_add(total, sat_mul(subsets, subsets));
      }
      break;
    case InstanceKind::periodic_set:
      for (std::size_t N = c.g_min; N <= c.g_max; ++N) {
        for (std::size_t m = c.n_min; m <= c.n_max; ++m) total = sat_add(total, sat_pow2(N + 1 + m));
      }
      break;
    case InstanceKind::congruence:
      for (std::size_t m = congruence_m_min(c); m <= c.g_max; ++m) {
        total = sat_add(total, static_cast<std::uint64_t>((m - 1) * m / 2));  // pairs k, l >= 1 with k + l <= m
      }
      break;
  }
  return total;
}

InstanceStream::InstanceStream(InstanceKind kind, GeneratorConfig config)
    : kind_(kind), config_(std::move(config)), rng_(config_.seed) {
  validate(kind_, config_);
  if (config_.mode == GenMode::random) {
    if (kind_ == InstanceKind::congruence) throw ContractViolation("generator: congruence triples are exhaustive only");
    planned_ = config_.count;
    return;
  }
  planned_ = exhaustive_count(kind_, config_);
  if (planned_ > config_.budget || planned_ == kSaturated) {
    throw ResourceError("exhaustive enumeration of " + std::to_string(planned_) +
                            (planned_ == kSaturated ? "+" : "") + " instances exceeds budget " +
                            std::to_string(config_.budget),
                        planned_, config_.budget);
  }
  switch (kind_) {
    case InstanceKind::family:
      outer_ = config_.g_min;
      inner_ = config_.n_min;
      break;
    case InstanceKind::group_pair:
      mask_ = 1;
      mask2_ = 1;
      break;
    case InstanceKind::periodic_set:
      outer_ = config_.g_min;
      inner_ = config_.n_min;
      break;
    case InstanceKind::congruence:
      outer_ = congruence_m_min(config_);
      inner_ = 1;
      mask_ = 1;
      break;
  }
}

std::optional<Instance> InstanceStream::next() {
  if (produced_ >= planned_) return std::nullopt;
  std::optional<Instance> out =
      config_.mode == GenMode::random ? std::optional<Instance>(next_random()) : next_exhaustive();
  if (out) ++produced_;
  return out;
}

std::optional<Instance> InstanceStream::next_exhaustive() {
  switch (kind_) {
    case InstanceKind::family:
      while (outer_ <= config_.g_max) {
        const std::size_t g = outer_;
        const std::size_t n = inner_;
        if (mask_ >= sat_pow2(g * n)) {
          mask_ = 0;
          if (++inner_ > config_.n_max) {
            inner_ = config_.n_min;
            ++outer_;
          }
          continue;
        }
        const std::uint64_t mask = mask_++;
        if (config_.nonempty_sets) {
          const std::uint64_t set_mask = (std::uint64_t{1} << g) - 1;
          bool all_nonempty = true;
          for (std::size_t i = 0; i < n && all_nonempty; ++i) all_nonempty = ((mask >> (i * g)) & set_mask) != 0;
          if (!all_nonempty) continue;
        }
        return family_from_mask(g, n, mask);
      }
      return std::nullopt;
    case InstanceKind::group_pair:
      while (outer_ < config_.groups.size()) {
        const auto& group = config_.groups[outer_];
        const std::uint64_t limit = sat_pow2(group.order());
        if (mask2_ >= limit) {
          mask2_ = 1;
          ++mask_;
        }
        if (mask_ >= limit) {
          mask_ = 1;
          mask2_ = 1;
          ++outer_;
          continue;
        }
        return GroupPair{subset_from_mask(group, mask_), subset_from_mask(group, mask2_++)};
      }
      return std::nullopt;
    case InstanceKind::periodic_set:
      while (outer_ <= config_.g_max) {
        const std::size_t threshold = outer_;
        const std::size_t period = inner_;
        if (mask2_ >= sat_pow2(period)) {
          mask2_ = 0;
          ++mask_;
        }
        if (mask_ >= sat_pow2(threshold + 1)) {
          mask_ = 0;
          mask2_ = 0;
          if (++inner_ > config_.n_max) {
            inner_ = config_.n_min;
            ++outer_;
          }
          continue;
        }
        return EventuallyPeriodicSet(threshold, bits_from_mask(threshold + 1, mask_), period,
                                     bits_from_mask(period, mask2_++));
      }
      return std::nullopt;
    case InstanceKind::congruence:
      while (outer_ <= config_.g_max) {
        const std::size_t m = outer_;
        if (inner_ >= m) {
          inner_ = 1;
          mask_ = 1;
          ++outer_;
          continue;
        }
        if (mask_ > m - inner_) {
          mask_ = 1;
          ++inner_;
          continue;
        }
        return CongruenceParams{inner_, static_cast<std::size_t>(mask_++), m};
      }
      return std::nullopt;
  }
  return std::nullopt;
}

Instance InstanceStream::next_random() {
  const double p = config_.density;
  switch (kind_) {
    case InstanceKind::family: {
      const auto g = static_cast<std::size_t>(rng_.between(config_.g_min, config_.g_max));
      const auto n = static_cast<std::size_t>(rng_.between(config_.n_min, config_.n_max));
      std::vector<BoundedIntSet> sets;
      sets.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        Bitset bits(g + 1);
        do {
          for (std::size_t x = 1; x <= g; ++x) bits.assign(x, rng_.bernoulli(p));
        } while (config_.nonempty_sets && bits.none());
        sets.emplace_back(g, std::move(bits));
      }
      return SetFamily(g, std::move(sets));
    }
    case InstanceKind::group_pair: {
      const auto& group = config_.groups[rng_.below(config_.groups.size())];
      const auto draw = [&] {
        Bitset bits(group.order());
        do {
          for (std::size_t x = 0; x < group.order(); ++x) bits.assign(x, rng_.bernoulli(p));
        } while (bits.none());
        return GroupSubset(group, std::move(bits));
      };
      GroupSubset a = draw();
      GroupSubset b = draw();
      return GroupPair{std::move(a), std::move(b)};
    }
    case InstanceKind::periodic_set: {
      const auto threshold = static_cast<std::size_t>(rng_.between(config_.g_min, config_.g_max));
      const auto period = static_cast<std::size_t>(rng_.between(config_.n_min, config_.n_max));
      Bitset head(threshold + 1);
      for (std::size_t x = 0; x <= threshold; ++x) head.assign(x, rng_.bernoulli(p));
      Bitset residues(period);
      for (std::size_t r = 0; r < period; ++r) residues.assign(r, rng_.bernoulli(p));
      return EventuallyPeriodicSet(threshold, std::move(head), period, std::move(residues));
    }
    case InstanceKind::congruence:
      break;
  }
  throw ContractViolation("generator: unsupported random instance kind");
}

}  // namespace sumsetlab::harness
