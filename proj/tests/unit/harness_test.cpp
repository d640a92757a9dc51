#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "sumsetlab/errors.hpp"
#include "sumsetlab/suites.hpp"

namespace {

using namespace sumsetlab;
using namespace sumsetlab::harness;

std::vector<std::string> drain(InstanceStream stream) {
  std::vector<std::string> out;
  while (auto next = stream.next()) out.push_back(encode(*next));
  return out;
}

GeneratorConfig family_config(std::size_t g, std::size_t n) {
  GeneratorConfig c;
  c.g_min = c.g_max = g;
  c.n_min = c.n_max = n;
  return c;
}

std::filesystem::path temp_file(const std::string& name) {
  auto path = std::filesystem::temp_directory_path() / ("sumsetlab_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove(path);
  return path;
}

TEST(Rng, BelowIsInRangeAndDeterministic) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.below(7);
    EXPECT_LT(x, 7U);
    EXPECT_EQ(x, b.below(7));
  }
  Rng c(1);
  EXPECT_FALSE(c.bernoulli(0.0));
  EXPECT_TRUE(c.bernoulli(1.0));
}

TEST(InstanceStream, ExhaustiveFamiliesCount) {
  const auto all = drain(InstanceStream(InstanceKind::family, family_config(3, 2)));
  EXPECT_EQ(all.size(), 64U);
  EXPECT_EQ(std::set<std::string>(all.begin(), all.end()).size(), 64U);
  EXPECT_EQ(all.front(), "g=3;{};{}");
  EXPECT_EQ(all[1], "g=3;{1};{}");
  EXPECT_EQ(exhaustive_count(InstanceKind::family, family_config(3, 2)), 64U);
}

TEST(InstanceStream, NonemptyFamilies) {
  auto c = family_config(3, 2);
  c.nonempty_sets = true;
  EXPECT_EQ(drain(InstanceStream(InstanceKind::family, c)).size(), 49U);
}

TEST(InstanceStream, ExhaustiveGroupPairsCount) {
  GeneratorConfig c;
  c.groups = {FiniteAbelianGroup::cyclic(4)};
  const auto all = drain(InstanceStream(InstanceKind::group_pair, c));
  EXPECT_EQ(all.size(), 225U);
  EXPECT_EQ(std::set<std::string>(all.begin(), all.end()).size(), 225U);
  EXPECT_EQ(all.front(), "Z4:{0};{0}");
}

TEST(InstanceStream, CongruenceTriples) {
  GeneratorConfig c;
  c.g_min = 2;
  c.g_max = 5;
  const auto all = drain(InstanceStream(InstanceKind::congruence, c));
  std::size_t expected = 0;
  for (std::size_t m = 2; m <= 5; ++m) {
    for (std::size_t k = 1; k < m; ++k) expected += m - k;
  }
  EXPECT_EQ(all.size(), expected);
  EXPECT_EQ(all.front(), "k=1,l=1,m=2");
}

TEST(InstanceStream, RandomIsDeterministicPerSeed) {
  auto c = family_config(8, 3);
  c.mode = GenMode::random;
  c.seed = 42;
  c.count = 200;
  const auto first = drain(InstanceStream(InstanceKind::family, c));
  EXPECT_EQ(first.size(), 200U);
  EXPECT_EQ(first, drain(InstanceStream(InstanceKind::family, c)));
  c.seed = 43;
  EXPECT_NE(first, drain(InstanceStream(InstanceKind::family, c)));
}

TEST(InstanceStream, RandomDensityExtremes) {
  auto c = family_config(6, 2);
  c.mode = GenMode::random;
  c.count = 5;
  c.density = 1.0;
  for (const auto& e : drain(InstanceStream(InstanceKind::family, c))) EXPECT_EQ(e, "g=6;{1,2,3,4,5,6};{1,2,3,4,5,6}");
  c.density = 0.0;
  for (const auto& e : drain(InstanceStream(InstanceKind::family, c))) EXPECT_EQ(e, "g=6;{};{}");
}

TEST(InstanceStream, BudgetRefusalCarriesExactCount) {
  auto c = family_config(3, 2);
  c.budget = 63;
  try {
    InstanceStream stream(InstanceKind::family, c);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.requested(), 64U);
    EXPECT_EQ(e.limit(), 63U);
  }
  auto huge = family_config(40, 2);
  EXPECT_THROW(InstanceStream(InstanceKind::family, huge), ResourceError);
}

TEST(InstanceStream, BudgetFromEnvironment) {
  ::setenv("SUMSETLAB_BUDGET", "1234", 1);
  EXPECT_EQ(budget_from_environment(), 1234U);
  ::setenv("SUMSETLAB_BUDGET", "junk", 1);
  EXPECT_EQ(budget_from_environment(), kDefaultBudget);
  ::unsetenv("SUMSETLAB_BUDGET");
  EXPECT_EQ(budget_from_environment(), kDefaultBudget);
}

TEST(Encoding, RoundTripsEveryKind) {
  for (const auto& [kind, text] : std::vector<std::pair<InstanceKind, std::string>>{
           {InstanceKind::family, "g=5;{1,2};{1};{2,5}"},
           {InstanceKind::group_pair, "Z2xZ4:{0,3};{1}"},
           {InstanceKind::periodic_set, "1:{0}|4:{1,2}"},
           {InstanceKind::congruence, "k=2,l=3,m=7"}}) {
    EXPECT_EQ(encode(decode(kind, text)), text);
  }
  EXPECT_THROW(decode(InstanceKind::congruence, "k=2,l=3"), ParseError);
  EXPECT_THROW(decode(InstanceKind::group_pair, "Z4:{0}"), ParseError);
}

TEST(Witness, JsonRoundTrip) {
  Witness w{"kneser", "Z6:{0,3};{0,3}", "group.kneser", Verdict::fail, {{"x", 1}}};
  const auto j = w.to_json();
  EXPECT_EQ(j.begin().key(), "v");
  EXPECT_EQ(j["verdict"], "fail");
  const auto back = Witness::from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.suite, w.suite);
  EXPECT_EQ(back.instance, w.instance);
  EXPECT_EQ(back.verdict, Verdict::fail);
  EXPECT_EQ(to_string(Verdict::not_applicable), "not-applicable");
  EXPECT_THROW(Witness::from_json(nlohmann::json{{"v", 2}}), ParseError);
}

TEST(Suites, RegistryIsComplete) {
  std::set<std::string> ids;
  for (const auto& s : all_suites()) ids.insert(std::string(s.id));
  EXPECT_EQ(ids, (std::set<std::string>{"dyson-bound", "mann", "shnirelman-prefix", "basis2", "transform-lemmas",
                                        "etransform", "pigeonhole", "chowla-cd", "kneser", "density-oracle",
                                        "congruence-example"}));
  EXPECT_THROW(find_suite("nope"), UsageError);
}

TEST(RunSuite, KneserZ6AndDysonG4) {
  RunOptions kneser;
  kneser.generator.groups = {FiniteAbelianGroup::cyclic(6)};
  const auto k = run_suite("kneser", kneser);
  EXPECT_EQ(k.counts.total(), 63U * 63U);
  EXPECT_EQ(k.counts.fail, 0U);

  RunOptions dyson;
  dyson.generator = family_config(4, 2);
  const auto d = run_suite("dyson-bound", dyson);
  EXPECT_EQ(d.counts.total(), 256U);
  EXPECT_TRUE(d.passed());

  RunOptions mann;
  mann.generator = family_config(6, 2);
  EXPECT_TRUE(run_suite("mann", mann).passed());
}

TEST(RunSuite, CountsSumToInstances) {
  RunOptions o;
  o.generator.groups = {FiniteAbelianGroup::cyclic(5)};
  const auto r = run_suite("pigeonhole", o);
  EXPECT_EQ(r.counts.pass + r.counts.fail + r.counts.not_applicable, 31U * 31U);
  EXPECT_GT(r.counts.not_applicable, 0U);
  EXPECT_GT(r.counts.pass, 0U);
}

TEST(RunSuite, ParallelMatchesSerial) {
  RunOptions o;
  o.generator = family_config(5, 2);
  o.collect_tight = true;
  const auto serial = run_suite("dyson-bound", o);
  o.threads = 4;
  const auto parallel = run_suite("dyson-bound", o);
  EXPECT_EQ(serial.counts, parallel.counts);
  EXPECT_EQ(serial.to_json(false), parallel.to_json(false));
  EXPECT_FALSE(serial.tight.empty());
}

TEST(RunSuite, ReportIsDeterministicModuloElapsed) {
  RunOptions o;
  o.generator = family_config(6, 3);
  o.generator.mode = GenMode::random;
  o.generator.seed = 9;
  o.generator.count = 300;
  EXPECT_EQ(run_suite("transform-lemmas", o).to_json(false).dump(),
            run_suite("transform-lemmas", o).to_json(false).dump());
}

TEST(RunSuite, TightSearchNeedsATightnessNotion) {
  RunOptions o;
  o.collect_tight = true;
  EXPECT_THROW(run_suite("mann", o), UsageError);
}

TEST(WitnessLog, SamplingAndReplay) {
  const auto path = temp_file("witness");
  {
    WitnessSink sink(path);
    RunOptions o;
    o.generator.groups = {FiniteAbelianGroup::cyclic(3)};
    o.sink = &sink;
    o.log_pass_every = 10;
    const auto r = run_suite("pigeonhole", o);
    EXPECT_EQ(r.sink_errors, 0U);
  }
  std::ifstream in(path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    const auto logged = Witness::from_json(nlohmann::json::parse(line));
    EXPECT_EQ(logged.verdict, Verdict::pass);  // not-applicable is off by default
    const auto fresh = replay(logged);
    EXPECT_EQ(fresh.verdict, logged.verdict);
    EXPECT_EQ(fresh.instance, logged.instance);
  }
  EXPECT_GT(lines, 0U);
  std::filesystem::remove(path);
}

TEST(WitnessLog, NotApplicableLoggedOnRequest) {
  const auto path = temp_file("na");
  {
    WitnessSink sink(path);
    RunOptions o;
    o.generator.groups = {FiniteAbelianGroup::cyclic(3)};
    o.sink = &sink;
    o.log_not_applicable = true;
    const auto r = run_suite("pigeonhole", o);
    EXPECT_GT(r.counts.not_applicable, 0U);
  }
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(Witness::from_json(nlohmann::json::parse(line)).verdict, Verdict::not_applicable);
  std::filesystem::remove(path);
}

TEST(WitnessLog, UnopenableSinkThrows) {
  EXPECT_THROW(WitnessSink("/nonexistent-dir/x/witness.jsonl"), std::runtime_error);
}

TEST(Replay, EvaluatesAForgedFailure) {
  // A logged "fail" for an instance that actually passes replays as pass.
  const Witness logged{"kneser", "Z6:{0,3};{0,3}", "group.kneser", Verdict::fail, {}};
  EXPECT_EQ(replay(logged).verdict, Verdict::pass);
  EXPECT_THROW(replay(Witness{"nope", "", "", Verdict::pass, {}}), UsageError);
}

}  // namespace
