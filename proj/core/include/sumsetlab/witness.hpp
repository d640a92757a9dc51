#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace sumsetlab::harness {

enum class Verdict { pass, fail, not_applicable };

std::string_view to_string(Verdict verdict);
/// ParseError on unknown text.
Verdict parse_verdict(std::string_view text);

/// One evaluated claim on one instance; enough to replay it.
struct Witness {
  static constexpr int kSchemaVersion = 1;

  std::string suite;
  std::string instance;  // module text encoding
  std::string claim;
  Verdict verdict = Verdict::pass;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  /// ParseError if required fields are missing or the version is unknown.
  static Witness from_json(const nlohmann::json& j);
};

/// Append-only JSON-lines file of witnesses. Writes are serialized, so a
/// sink may be shared by concurrent evaluators.
class WitnessSink {
 public:
  /// Opens in append mode; std::runtime_error if the file cannot be opened.
  explicit WitnessSink(const std::filesystem::path& path);

  /// False if the write failed; later writes are still attempted.
  bool write(const Witness& witness);
  std::size_t failures() const;

 private:
  mutable std::mutex mutex_;
  std::ofstream out_;
  std::size_t failures_ = 0;
};

/// Appends one line; returns false (and counts the failure) on I/O error.
bool log_witness(const Witness& witness, WitnessSink& sink);

}  // namespace sumsetlab::harness
