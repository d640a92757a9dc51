#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sumsetlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sumsetlab::cli::cli_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

TEST(Cli, DensityOfOdds) {
  const auto r = run({"density", "--ep", "0:{}|2:{1}"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1/2\n");
  EXPECT_EQ(run({"density", "--ep", "0:{}|2:{1}", "--lower"}).out, "1/2\n");
  const auto j = nlohmann::json::parse(run({"--json", "density", "--ep", "4:{0,1,2}|5:{0,1}"}).out);
  EXPECT_EQ(j["lower_density"], "2/5");
}

TEST(Cli, TransformTrace) {
  const auto r = run({"transform", "--family", "g=3;{1};{1,2}", "--trace"});
  EXPECT_EQ(r.code, 0);
  const auto steps = json_lines(r.out);
  ASSERT_EQ(steps.size(), 2U);
  EXPECT_EQ(steps[0]["a0"], 0);
  EXPECT_EQ(steps[0]["T"], "3:{2}");
  EXPECT_EQ(steps[1]["a0"], 2);
  EXPECT_EQ(steps[1]["after"], "g=3;{1,2,3};{}");
  EXPECT_EQ(json_lines(run({"transform", "--family", "g=3;{1};{1,2}"}).out).size(), 1U);
}

TEST(Cli, Operations) {
  EXPECT_EQ(run({"sumset", "--set", "5:{1}", "--set", "5:{2}"}).out, "5:{1,2,3}\n");
  EXPECT_EQ(run({"sumset", "--set", "4:{1,2}", "--fold", "2"}).out, "4:{1,2,3,4}\n");
  EXPECT_EQ(run({"sumset", "--set", "Z6:{0,3}", "--set", "Z6:{0,3}"}).out, "Z6:{0,3}\n");
  EXPECT_EQ(run({"phi", "--family", "g=3;{1};{1,2}", "--r", "2", "--m", "3"}).out, "3\n");
  EXPECT_EQ(run({"stabilizer", "--set", "Z6:{0,2,4}"}).out, "Z6:{0,2,4}\n");
  EXPECT_EQ(run({"subgroups", "--group", "Z6"}).out, "Z6:{0}\nZ6:{0,3}\nZ6:{0,2,4}\nZ6:{0,1,2,3,4,5}\n");
  const auto e = run({"etransform", "--a", "Z5:{0,1}", "--b", "Z5:{0,2}", "--e", "1"});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "e=1 A(e)=Z5:{0,1,3} B(e)=Z5:{0}\n");
}

TEST(Cli, CheckKneserExhaustive) {
  const auto r = run({"check", "kneser", "--group", "Z6", "--exhaustive"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(run({"--json", "check", "kneser", "--group", "Z6"}).out);
  EXPECT_EQ(j["counts"]["fail"], 0);
  EXPECT_EQ(j["instances"], 3969);
  EXPECT_EQ(j["config"]["groups"][0], "Z6");
}

TEST(Cli, JsonReportDeterministicModuloElapsed) {
  const std::vector<std::string> args{"--json", "check", "dyson-bound", "--random", "--seed", "42",
                                      "--count", "500", "--g-max", "10", "--n-max", "4"};
  auto a = nlohmann::json::parse(run(args).out);
  auto b = nlohmann::json::parse(run(args).out);
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["config"]["seed"], 42);
}

TEST(Cli, SearchTight) {
  const auto r = run({"--json", "search-tight", "chowla-cd", "--group", "Z5"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.contains("tight"));
  EXPECT_GT(j["tight"].size(), 0U);
  EXPECT_EQ(run({"search-tight", "mann"}).code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check", "nope"}).code, 2);
  EXPECT_EQ(run({"density", "--ep", "garbage"}).code, 2);
  EXPECT_EQ(run({"check", "mann", "--group", "Z6"}).code, 2);
  const auto r = run({"phi", "--family", "g=3;{1}", "--r", "2", "--m", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("r"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BudgetFromEnvironment) {
  ::setenv("SUMSETLAB_BUDGET", "100", 1);
  const auto r = run({"check", "dyson-bound", "--g-max", "4"});
  ::unsetenv("SUMSETLAB_BUDGET");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("requested 340"), std::string::npos) << r.err;
}

TEST(Cli, ReplayWitnessFile) {
  const auto path = std::filesystem::temp_directory_path() / ("sumsetlab_cli_" + std::to_string(::getpid()));
  std::filesystem::remove(path);
  EXPECT_EQ(run({"check", "pigeonhole", "--group", "Z3", "--witness-file", path.string(), "--log-na"}).code, 0);
  const auto r = run({"replay", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("not-applicable"), std::string::npos);

  // A line whose logged verdict disagrees with the fresh evaluation.
  std::ofstream(path, std::ios::app)
      << R"({"v":1,"suite":"kneser","instance":"Z6:{0,3};{0,3}","claim":"group.kneser","verdict":"fail","detail":{}})"
      << '\n';
  const auto mismatch = run({"--json", "replay", path.string()});
  EXPECT_EQ(mismatch.code, 1);
  EXPECT_EQ(json_lines(mismatch.out).back()["reproduced"], false);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"replay", path.string()}).code, 2);
}

}  // namespace
