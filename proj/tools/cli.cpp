#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sumsetlab/abgroup.hpp"
#include "sumsetlab/density.hpp"
#include "sumsetlab/dyson.hpp"
#include "sumsetlab/errors.hpp"
#include "sumsetlab/intset.hpp"
#include "sumsetlab/ranksum.hpp"
#include "sumsetlab/suites.hpp"

namespace sumsetlab::cli {

namespace {

using json = nlohmann::ordered_json;
using harness::GenMode;

struct RunFlags {
  std::string suite;
  bool exhaustive = false;
  bool random = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> count;
  std::optional<double> density;
  std::optional<std::size_t> g_min, g_max, n_min, n_max;
  std::vector<std::string> groups;
  bool nonempty = false;
  unsigned threads = 1;
  std::string witness_file;
  bool log_na = false;
  std::uint64_t log_pass_every = 0;
};

void add_run_options(CLI::App& cmd, RunFlags& f) {
  cmd.add_option("suite", f.suite, "Suite id")->required();
  auto* ex = cmd.add_flag("--exhaustive", f.exhaustive, "Enumerate every instance of the shape");
  cmd.add_flag("--random", f.random, "Draw --count seeded random instances")->excludes(ex);
  cmd.add_option("--seed", f.seed, "Random seed");
  cmd.add_option("--count", f.count, "Random instances to draw");
  cmd.add_option("--density", f.density, "Membership probability for random sets")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--g-min", f.g_min, "Smallest bound g (threshold N for periodic sets)");
  cmd.add_option("--g-max", f.g_max, "Largest bound g (threshold N; modulus for congruence triples)");
  cmd.add_option("--n-min", f.n_min, "Fewest sets per family (period m for periodic sets)");
  cmd.add_option("--n-max", f.n_max, "Most sets per family (period m for periodic sets)");
  cmd.add_option("--group", f.groups, "Group such as Z6 or Z2xZ4; repeatable");
  cmd.add_flag("--nonempty", f.nonempty, "Skip families containing an empty set");
  cmd.add_option("--threads", f.threads, "Worker threads")->check(CLI::Range(1U, 256U));
  cmd.add_option("--witness-file", f.witness_file, "Append witnesses as JSON lines to this file");
  cmd.add_flag("--log-na", f.log_na, "Also log not-applicable witnesses");
  cmd.add_option("--log-pass-every", f.log_pass_every, "Log every k-th pass witness (0: none)");
}

harness::GeneratorConfig build_config(const harness::Suite& suite, const RunFlags& f) {
  harness::GeneratorConfig c = suite.defaults();
  if (f.exhaustive) c.mode = GenMode::exhaustive;
  if (f.random) c.mode = GenMode::random;
  if (f.seed) c.seed = *f.seed;
  if (f.count) c.count = *f.count;
  if (f.density) c.density = *f.density;
  if (f.g_min) c.g_min = *f.g_min;
  if (f.g_max) c.g_max = *f.g_max;
  if (f.n_min) c.n_min = *f.n_min;
  if (f.n_max) c.n_max = *f.n_max;
  if (f.g_min && !f.g_max && c.g_max < c.g_min) c.g_max = c.g_min;
  if (f.g_max && !f.g_min && c.g_min > c.g_max) c.g_min = c.g_max;
  if (f.n_min && !f.n_max && c.n_max < c.n_min) c.n_max = c.n_min;
  if (f.n_max && !f.n_min && c.n_min > c.n_max) c.n_min = c.n_max;
  if (!f.groups.empty()) {
    if (suite.kind != harness::InstanceKind::group_pair) {
      throw harness::UsageError("--group applies only to group suites, not '" + std::string(suite.id) + "'");
    }
    c.groups.clear();
    for (const auto& g : f.groups) c.groups.push_back(FiniteAbelianGroup::parse(g));
  }
  c.nonempty_sets = f.nonempty;
  c.budget = harness::budget_from_environment();
  return c;
}

int run(const RunFlags& f, bool tight, bool as_json, std::ostream& out, std::ostream& err) {
  const harness::Suite& suite = harness::find_suite(f.suite);
  harness::RunOptions options;
  options.generator = build_config(suite, f);
  options.threads = f.threads;
  options.log_not_applicable = f.log_na;
  options.log_pass_every = f.log_pass_every;
  options.collect_tight = tight;
  std::optional<harness::WitnessSink> sink;
  if (!f.witness_file.empty()) {
    sink.emplace(f.witness_file);
    options.sink = &*sink;
  }
  const harness::SuiteReport report = harness::run_suite(f.suite, options);
  if (report.sink_errors != 0) {
    err << "warning: " << report.sink_errors << " witness lines could not be written to " << f.witness_file << '\n';
  }
  if (as_json) {
    out << report.to_json().dump() << '\n';
  } else {
    const auto& c = report.counts;
    out << report.suite << ": " << c.total() << " instances, pass " << c.pass << ", fail " << c.fail
        << ", not-applicable " << c.not_applicable << " (" << report.elapsed.count() << " ms)\n";
    for (const auto& w : report.tight) out << "TIGHT " << w.instance << ' ' << w.detail.dump() << '\n';
    for (const auto& w : report.fails) out << "FAIL " << w.instance << ' ' << w.detail.dump() << '\n';
  }
  return report.passed() ? kExitPass : kExitFail;
}

int replay_file(const std::string& path, bool as_json, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw harness::UsageError("replay: cannot open '" + path + "'");
  bool ok = true;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    harness::Witness logged;
    try {
      logged = harness::Witness::from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ":" + std::to_string(number) + ": " + e.what());
    }
    const harness::Witness fresh = harness::replay(logged);
    const bool same = fresh.verdict == logged.verdict;
    ok = ok && same && fresh.verdict != harness::Verdict::fail;
    if (as_json) {
      json j = fresh.to_json();
      j["logged_verdict"] = harness::to_string(logged.verdict);
      j["reproduced"] = same;
      out << j.dump() << '\n';
    } else {
      out << fresh.suite << ' ' << fresh.instance << ' ' << harness::to_string(fresh.verdict)
          << (same ? "" : " (logged " + std::string(harness::to_string(logged.verdict)) + ")") << '\n';
    }
  }
  return ok ? kExitPass : kExitFail;
}

json step_json(const TransformStep& step) {
  return {{"a0", step.a0},
          {"ell", step.ell},
          {"T", step.T.to_string()},
          {"before", step.before.to_string()},
          {"after", step.after.to_string()}};
}

}  // namespace

int cli_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sumset and density toolkit with exhaustive theorem checkers", "sumsetlab"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output")->configurable(false);
  app.set_version_flag("--version", "sumsetlab 0.1.0");

  std::vector<std::string> sumset_sets;
  std::size_t fold = 0;
  auto* sumset = app.add_subcommand("sumset", "Sumset of integer sets (0-adjoined) or group subsets (Minkowski)");
  sumset->add_option("--set", sumset_sets, "Set such as 10:{1,3} or Z6:{0,3}; repeatable")->required();
  sumset->add_option("--fold", fold, "h-fold sumset of a single integer set")->check(CLI::PositiveNumber);

  std::string family_text;
  std::optional<std::size_t> phi_r, phi_m;
  auto* phi = app.add_subcommand("phi", "Rank-r counting function of a family");
  phi->add_option("--family", family_text, "Family such as g=5;{1,2};{2,5}")->required();
  phi->add_option("--r", phi_r, "Rank");
  phi->add_option("--m", phi_m, "Prefix length");

  std::string ep_text;
  bool lower = false;
  auto* density = app.add_subcommand("density", "Shnirel'man density of an eventually periodic set");
  density->add_option("--ep", ep_text, "Set such as 0:{}|2:{1}")->required();
  density->add_flag("--lower", lower, "Print the lower asymptotic density instead");

  bool trace = false;
  auto* transform = app.add_subcommand("transform", "One Dyson transform step, or the full trace; JSON lines");
  transform->add_option("--family", family_text, "Family with n >= 2")->required();
  transform->add_flag("--trace", trace, "Iterate until the last set is empty");

  std::string a_text, b_text;
  std::optional<std::size_t> e_elem;
  auto* etransform = app.add_subcommand("etransform", "e-transform of a pair of group subsets");
  etransform->add_option("--a", a_text, "Subset A such as Z6:{0,1}")->required();
  etransform->add_option("--b", b_text, "Subset B in the same group")->required();
  etransform->add_option("--e", e_elem, "Element of A (default: every element)");

  std::string set_text;
  auto* stab = app.add_subcommand("stabilizer", "Stabilizer subgroup of a group subset");
  stab->add_option("--set", set_text, "Subset such as Z6:{0,2,4}")->required();

  std::string group_text;
  std::size_t cap = kDefaultSubgroupCap;
  auto* subgroups = app.add_subcommand("subgroups", "Every subgroup of a finite abelian group");
  subgroups->add_option("--group", group_text, "Group such as Z2xZ4")->required();
  subgroups->add_option("--cap", cap, "Largest group order to enumerate");

  RunFlags check_flags, tight_flags;
  auto* check = app.add_subcommand("check", "Run a theorem suite; exit 1 on any failure");
  add_run_options(*check, check_flags);
  auto* search = app.add_subcommand("search-tight", "Collect equality cases (dyson-bound, chowla-cd, kneser)");
  add_run_options(*search, tight_flags);

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Re-evaluate every witness in a JSON-lines file");
  replay->add_option("file", replay_path, "Witness file")->required();

  auto* suites = app.add_subcommand("suites", "List suite ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*sumset) {
      json j;
      if (!sumset_sets.front().empty() && sumset_sets.front().front() == 'Z') {
        if (fold != 0) throw harness::UsageError("sumset: --fold applies to integer sets only");
        GroupSubset sum = GroupSubset::parse(sumset_sets.front());
        for (std::size_t i = 1; i < sumset_sets.size(); ++i) sum = minkowski_sum(sum, GroupSubset::parse(sumset_sets[i]));
        j = {{"sum", sum.to_string()}, {"size", sum.size()}};
      } else {
        std::vector<BoundedIntSet> sets;
        for (const auto& s : sumset_sets) sets.push_back(BoundedIntSet::parse(s));
        BoundedIntSet sum(sets.front().bound());
        if (fold != 0) {
          if (sets.size() != 1) throw harness::UsageError("sumset: --fold needs exactly one --set");
          sum = hfold_sumset(sets.front(), fold, sets.front().bound());
        } else {
          sum = shnirelman_sumset(sets, sets.front().bound());
        }
        j = {{"sum", sum.to_string()}, {"size", sum.size()}};
      }
      out << (as_json ? j.dump() : j["sum"].get<std::string>()) << '\n';
    } else if (*phi) {
      const SetFamily family = SetFamily::parse(family_text);
      if (phi_r && phi_m) {
        const std::uint64_t value = sumsetlab::phi(family, *phi_r, *phi_m);
        out << (as_json ? json{{"r", *phi_r}, {"m", *phi_m}, {"phi", value}}.dump() : std::to_string(value)) << '\n';
      } else {
        if (phi_r || phi_m) throw harness::UsageError("phi: give both --r and --m, or neither for the full table");
        const RankProfile profile(family);
        json table = json::array();
        for (std::size_t r = 1; r <= profile.n(); ++r) {
          json row = json::array();
          for (std::size_t m = 1; m <= profile.bound(); ++m) row.push_back(profile.phi(r, m));
          table.push_back(std::move(row));
        }
        if (as_json) {
          out << json{{"gamma_star", gamma_star(family).to_string()}, {"phi", table}}.dump() << '\n';
        } else {
          out << "gamma* = " << gamma_star(family) << '\n';
          for (std::size_t r = 0; r < table.size(); ++r) out << "r=" << r + 1 << ": " << table[r].dump() << '\n';
        }
      }
    } else if (*density) {
      const EventuallyPeriodicSet set = EventuallyPeriodicSet::parse(ep_text);
      const Rational sigma = shnirelman_density(set);
      const Rational d_l = lower_density(set);
      if (as_json) {
        out << json{{"set", set.to_string()}, {"sigma", sigma.to_string()}, {"lower_density", d_l.to_string()}}.dump()
            << '\n';
      } else {
        out << (lower ? d_l : sigma) << '\n';
      }
    } else if (*transform) {
      const SetFamily family = SetFamily::parse(family_text);
      if (trace) {
        const TransformTrace result = iterate_transform(family);
        for (const auto& step : result.steps) out << step_json(step).dump() << '\n';
      } else {
        out << step_json(apply_transform(family)).dump() << '\n';
      }
    } else if (*etransform) {
      const GroupSubset a = GroupSubset::parse(a_text);
      const GroupSubset b = GroupSubset::parse(b_text);
      std::vector<Element> es = e_elem ? std::vector<Element>{*e_elem} : a.elements();
      bool ok = true;
      for (const Element e : es) {
        const ETransform t = e_transform(a, b, e);
        const ETransformReport r = check_etransform_identities(a, b, e);
        ok = ok && r.holds();
        if (as_json) {
          out << json{{"e", e},
                      {"A(e)", t.a.to_string()},
                      {"B(e)", t.b.to_string()},
                      {"sum_contained", r.sum_contained},
                      {"exchange_exact", r.exchange_exact},
                      {"cardinality_kept", r.cardinality_kept},
                      {"zero_kept", r.zero_kept}}
                     .dump()
              << '\n';
        } else {
          out << "e=" << e << " A(e)=" << t.a.to_string() << " B(e)=" << t.b.to_string()
              << (r.holds() ? "" : " IDENTITY FAILURE") << '\n';
        }
      }
      return ok ? kExitPass : kExitFail;
    } else if (*stab) {
      const GroupSubset x = GroupSubset::parse(set_text);
      const Subgroup h = stabilizer(x);
      if (as_json) {
        out << json{{"set", x.to_string()}, {"stabilizer", h.carrier().to_string()}, {"order", h.order()}}.dump()
            << '\n';
      } else {
        out << h.carrier().to_string() << '\n';
      }
    } else if (*subgroups) {
      const FiniteAbelianGroup group = FiniteAbelianGroup::parse(group_text);
      const auto lattice = enumerate_subgroups(group, cap);
      if (as_json) {
        json list = json::array();
        for (const auto& h : lattice) list.push_back(h.carrier().to_string());
        out << json{{"group", group.to_string()}, {"subgroups", list}}.dump() << '\n';
      } else {
        for (const auto& h : lattice) out << h.carrier().to_string() << '\n';
      }
    } else if (*check) {
      return run(check_flags, false, as_json, out, err);
    } else if (*search) {
      return run(tight_flags, true, as_json, out, err);
    } else if (*replay) {
      return replay_file(replay_path, as_json, out);
    } else if (*suites) {
      for (const auto& s : harness::all_suites()) {
        out << s.id << (s.supports_tight ? " (search-tight)" : "") << '\n';
      }
    }
    return kExitPass;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << " (requested " << e.requested() << ", limit " << e.limit()
        << "; raise SUMSETLAB_BUDGET to allow)\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace sumsetlab::cli
