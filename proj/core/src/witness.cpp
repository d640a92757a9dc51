#include "sumsetlab/witness.hpp"

#include <stdexcept>

#include "sumsetlab/errors.hpp"

namespace sumsetlab::harness {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      return "not-applicable";
  }
  return "unknown";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "pass") return Verdict::pass;
  if (text == "fail") return Verdict::fail;
  if (text == "not-applicable") return Verdict::not_applicable;
  throw ParseError("unknown verdict '" + std::string(text) + "'");
}

nlohmann::ordered_json Witness::to_json() const {
  nlohmann::ordered_json j;
  j["v"] = kSchemaVersion;
  j["suite"] = suite;
  j["instance"] = instance;
  j["claim"] = claim;
  j["verdict"] = std::string(harness::to_string(verdict));
  j["detail"] = detail;
  return j;
}

Witness Witness::from_json(const nlohmann::json& j) {
  try {
    if (j.at("v").get<int>() != kSchemaVersion) {
      throw ParseError("witness: unsupported schema version " + j.at("v").dump());
    }
    Witness w;
    w.suite = j.at("suite").get<std::string>();
    w.instance = j.at("instance").get<std::string>();
    w.claim = j.at("claim").get<std::string>();
    w.verdict = parse_verdict(j.at("verdict").get<std::string>());
    if (j.contains("detail")) w.detail = nlohmann::ordered_json::parse(j.at("detail").dump());
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("witness: ") + e.what());
  }
}

WitnessSink::WitnessSink(const std::filesystem::path& path) : out_(path, std::ios::app) {
  if (!out_) throw std::runtime_error("cannot open witness file '" + path.string() + "' for appending");
}

bool WitnessSink::write(const Witness& witness) {
  const std::string line = witness.to_json().dump() + "\n";
  const std::lock_guard lock(mutex_);
  out_ << line;
  out_.flush();
  if (!out_) {
    ++failures_;
    out_.clear();
    return false;
  }
  return true;
}

std::size_t WitnessSink::failures() const {
  const std::lock_guard lock(mutex_);
  return failures_;
}

bool log_witness(const Witness& witness, WitnessSink& sink) { return sink.write(witness); }

}  // namespace sumsetlab::harness
