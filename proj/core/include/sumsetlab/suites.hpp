#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sumsetlab/generators.hpp"
#include "sumsetlab/witness.hpp"

namespace sumsetlab::harness {

/// Unknown suite id or an option combination a suite cannot run with.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteOutcome {
  Verdict verdict = Verdict::pass;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
  bool tight = false;  // equality case of the suite's inequality
};

struct Suite {
  std::string_view id;
  InstanceKind kind;
  std::string_view claim;  // claim id recorded in witnesses
  bool supports_tight;
  SuiteOutcome (*evaluate)(const Instance&);
  GeneratorConfig (*defaults)();
};

std::span<const Suite> all_suites();
/// UsageError for an unknown id.
const Suite& find_suite(std::string_view id);

struct VerdictCounts {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t not_applicable = 0;
  std::uint64_t total() const noexcept { return pass + fail + not_applicable; }
  friend bool operator==(const VerdictCounts&, const VerdictCounts&) = default;
};

struct RunOptions {
  GeneratorConfig generator;
  unsigned threads = 1;
  WitnessSink* sink = nullptr;
  bool log_not_applicable = false;
  std::uint64_t log_pass_every = 0;  // 0: never log passes
  bool collect_tight = false;
};

struct SuiteReport {
  std::string suite;
  VerdictCounts counts;
  std::chrono::milliseconds elapsed{0};
  nlohmann::ordered_json config;
  std::vector<Witness> fails;
  std::vector<Witness> tight;
  std::size_t sink_errors = 0;

  bool passed() const noexcept { return counts.fail == 0; }
  nlohmann::ordered_json to_json(bool include_elapsed = true) const;
};

/// Evaluates a suite on every instance of the configured stream.
/// Instances are processed in batches; with threads > 1 each batch is split
/// across workers and merged in stream order, so counts, witnesses and
/// logged lines are identical to a serial run.
SuiteReport run_suite(std::string_view suite_id, const RunOptions& options);

/// Re-evaluates a logged witness and returns the fresh witness.
Witness replay(const Witness& logged);

nlohmann::ordered_json config_to_json(const GeneratorConfig& config);

}  // namespace sumsetlab::harness
