#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sumsetlab/abgroup.hpp"
#include "sumsetlab/density.hpp"
#include "sumsetlab/ranksum.hpp"

namespace sumsetlab::harness {

/// Deterministic RNG for instance generation. Built on mt19937_64 (whose
/// output sequence is fixed by the standard) with hand-written range and
/// Bernoulli draws, so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability `probability` (clamped to [0, 1]).
  bool bernoulli(double probability);

 private:
  std::mt19937_64 engine_;
};

struct GroupPair {
  GroupSubset a;
  GroupSubset b;
  friend bool operator==(const GroupPair&, const GroupPair&) = default;
};

struct CongruenceParams {
  std::size_t k;
  std::size_t l;
  std::size_t m;
  friend bool operator==(const CongruenceParams&, const CongruenceParams&) = default;
};

using Instance = std::variant<SetFamily, GroupPair, EventuallyPeriodicSet, CongruenceParams>;

enum class InstanceKind { family, group_pair, periodic_set, congruence };

/// Text encodings: families `g=5;{1};{2}`, group pairs `Z6:{0,3};{0,1}`,
/// periodic sets `N:{head}|m:{residues}`, congruence triples `k=2,l=3,m=7`.
std::string encode(const Instance& instance);
/// ParseError on malformed text.
Instance decode(InstanceKind kind, std::string_view text);

enum class GenMode { exhaustive, random };

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// Budget from SUMSETLAB_BUDGET when set and valid, else kDefaultBudget.
std::uint64_t budget_from_environment();

/// Shape of an instance stream.
///
/// Families: g in [g_min, g_max], n in [n_min, n_max].
/// Group pairs: one of `groups` per instance.
/// Periodic sets: threshold N in [g_min, g_max], period m in [n_min, n_max].
/// Congruence triples: every (k, l, m) with k + l <= m <= g_max.
struct GeneratorConfig {
  GenMode mode = GenMode::exhaustive;
  std::uint64_t seed = 1;
  std::uint64_t count = 1000;  // random mode
  double density = 0.5;        // membership probability in random mode
  std::size_t g_min = 1;
  std::size_t g_max = 4;
  std::size_t n_min = 2;
  std::size_t n_max = 2;
  std::vector<FiniteAbelianGroup> groups;
  bool nonempty_sets = false;  // families: skip instances with an empty set
  std::uint64_t budget = kDefaultBudget;
};

/// Finite stream of instances.
///
/// Exhaustive order: families by g, then n, then a counter whose bit
/// (i-1)*g + (x-1) is membership of x in A_i; group pairs by group, then A,
/// then B, each as a nonzero membership mask; periodic sets by N, m, head
/// mask, residue mask; congruence triples by m, k, l. Random mode draws
/// `count` instances from Rng(seed) with independent membership.
class InstanceStream {
 public:
  /// ResourceError (carrying the exact count) if an exhaustive stream
  /// exceeds config.budget; ContractViolation on an invalid shape.
  InstanceStream(InstanceKind kind, GeneratorConfig config);

  std::optional<Instance> next();
  /// Number of instances the stream will produce.
  std::uint64_t planned() const noexcept { return planned_; }

 private:
  std::optional<Instance> next_exhaustive();
  Instance next_random();

  InstanceKind kind_;
  GeneratorConfig config_;
  Rng rng_;
  std::uint64_t planned_ = 0;
  std::uint64_t produced_ = 0;
  // exhaustive cursor
  std::size_t outer_ = 0;   // g / group index / N / m
  std::size_t inner_ = 0;   // n / period / k
  std::uint64_t mask_ = 0;  // membership counter / l
  std::uint64_t mask2_ = 0;
};

/// Exact size of an exhaustive stream, saturating at UINT64_MAX.
std::uint64_t exhaustive_count(InstanceKind kind, const GeneratorConfig& config);

}  // namespace sumsetlab::harness
