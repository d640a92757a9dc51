#include "sumsetlab/suites.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "sumsetlab/abgroup.hpp"
#include "sumsetlab/density.hpp"
#include "sumsetlab/dyson.hpp"
#include "sumsetlab/errors.hpp"
#include "sumsetlab/ranksum.hpp"

namespace sumsetlab::harness {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kDetailLimit = 8;  // violations echoed per witness

SuiteOutcome not_applicable(std::string reason) {
  SuiteOutcome out;
  out.verdict = Verdict::not_applicable;
  out.detail["reason"] = std::move(reason);
  return out;
}

Verdict verdict_of(bool holds) { return holds ? Verdict::pass : Verdict::fail; }

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char ch : text) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<FiniteAbelianGroup> cyclic_groups(std::size_t lo, std::size_t hi) {
  std::vector<FiniteAbelianGroup> out;
  for (std::size_t m = lo; m <= hi; ++m) out.push_back(FiniteAbelianGroup::cyclic(m));
  return out;
}

// ---------------------------------------------------------------------------
// integer suites

SuiteOutcome eval_dyson_bound(const Instance& instance) {
  const auto& family = std::get<SetFamily>(instance);
  const BoundReport report = check_dyson_bound(family);
  SuiteOutcome out;
  out.verdict = verdict_of(report.holds);
  out.tight = !report.tight.empty();
  out.detail["gamma_star"] = report.gamma_star.to_string();
  out.detail["violations"] = report.violations.size();
  if (!report.violations.empty()) {
    json list = json::array();
    for (std::size_t i = 0; i < std::min(kDetailLimit, report.violations.size()); ++i) {
      const auto& v = report.violations[i];
      list.push_back({{"r", v.r}, {"m", v.m}, {"lhs", v.lhs}, {"rhs", v.rhs.to_string()}});
    }
    out.detail["first_violations"] = std::move(list);
  }
  if (out.tight) {
    json list = json::array();
    for (const auto& [r, m] : report.tight) list.push_back({r, m});
    out.detail["tight"] = std::move(list);
  }
  return out;
}

SuiteOutcome eval_mann(const Instance& instance) {
  const auto& family = std::get<SetFamily>(instance);
  if (family.size() != 2) return not_applicable("mann needs a pair of sets");
  const auto& a = family.set(1);
  const auto& b = family.set(2);
  bool fundamental = true;
  bool corollary = true;
  json failures = json::array();
  for (std::size_t n = 1; n <= family.bound(); ++n) {
    const MannReport r = check_mann(a, b, n);
    fundamental = fundamental && r.fundamental_holds;
    corollary = corollary && r.corollary_holds;
    if (!r.holds() && failures.size() < kDetailLimit) {
      failures.push_back({{"n", n},
                          {"C(n)", r.sum_count},
                          {"gap_minimum", r.gap_minimum ? r.gap_minimum->to_string() : "none"},
                          {"gamma", r.gamma.to_string()},
                          {"fundamental", r.fundamental_holds},
                          {"corollary", r.corollary_holds}});
    }
  }
  // With n = r = 2 the rank bound and the finite corollary must agree.
  const bool dyson = check_dyson_bound(family).holds;
  const bool agree = dyson == corollary;
  SuiteOutcome out;
  out.verdict = verdict_of(fundamental && corollary && agree);
  out.detail["fundamental"] = fundamental;
  out.detail["corollary"] = corollary;
  out.detail["dyson_agrees"] = agree;
  if (!failures.empty()) out.detail["failures"] = std::move(failures);
  return out;
}

SuiteOutcome eval_shnirelman_prefix(const Instance& instance) {
  const auto& family = std::get<SetFamily>(instance);
  if (family.size() != 2) return not_applicable("shnirelman-prefix needs a pair of sets");
  const auto report = check_shnirelman_prefix(family.set(1), family.set(2));
  SuiteOutcome out;
  out.verdict = verdict_of(report.holds);
  out.detail["alpha"] = report.alpha.to_string();
  out.detail["beta"] = report.beta.to_string();
  out.detail["coefficient"] = report.coefficient.to_string();
  if (report.first_violation) out.detail["first_violation"] = *report.first_violation;
  return out;
}

SuiteOutcome eval_basis2(const Instance& instance) {
  const auto& family = std::get<SetFamily>(instance);
  if (family.size() != 1) return not_applicable("basis2 needs a single set");
  const auto& a = family.set(1);
  const auto counts = prefix_counts(a);
  for (std::size_t n = 1; n <= a.bound(); ++n) {
    if (2 * counts[n] < n) return not_applicable("A(" + std::to_string(n) + ") < " + std::to_string(n) + "/2");
  }
  SuiteOutcome out;
  const bool covered = is_basis_up_to(a, 2, a.bound());
  out.verdict = verdict_of(covered);
  out.detail["covered"] = covered;
  return out;
}

SuiteOutcome eval_transform_lemmas(const Instance& instance) {
  const auto& family = std::get<SetFamily>(instance);
  if (family.size() < 2) return not_applicable("transform needs n >= 2");
  const std::size_t g = family.bound();
  const std::size_t n = family.size();
  const std::size_t initial = family.set(n).size();
  const TransformTrace trace = iterate_transform(family);

  bool ok = trace.steps.size() <= initial && trace.terminal.set(n).empty();
  json failures = json::array();
  const auto record = [&](json entry) {
    ok = false;
    if (failures.size() < kDetailLimit) failures.push_back(std::move(entry));
  };
  if (!check_dyson_bound(family).holds) record({{"step", -1}, {"claim", "dyson_bound_before"}});
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TransformStep& step = trace.steps[i];
    const Rational gamma = gamma_star(step.before);
    const auto tests = lemma1_test_sets(step.before, fnv1a(step.before.to_string()));
    const LemmaReport lemmas = check_lemmas(step, gamma, tests);
    if (!lemmas.lemma1.empty()) {
      const auto& w = lemmas.lemma1.front();
      record({{"step", i},
              {"claim", "lemma1"},
              {"S", tests[w.set_index].to_string()},
              {"h", w.h},
              {"part", w.part},
              {"count", lemmas.lemma1.size()}});
    }
    if (!lemmas.lemma2.empty()) {
      const auto& w = lemmas.lemma2.front();
      record({{"step", i}, {"claim", "lemma2"}, {"r", w.r}, {"m", w.m}, {"before", w.before}, {"after", w.after}});
    }
    if (!lemmas.lemma3.empty()) {
      const auto& w = lemmas.lemma3.front();
      record({{"step", i}, {"claim", "lemma3"}, {"m", w.m}, {"after", w.after}, {"gamma", gamma.to_string()}});
    }
    // Cardinality exchange on [1, g].
    const std::size_t gained = step.after.set(step.ell).size() - step.before.set(step.ell).size();
    const std::size_t lost = step.before.set(n).size() - step.after.set(n).size();
    std::size_t landing = 0;
    step.T.bits().for_each([&](std::size_t t) { landing += static_cast<std::int64_t>(t) + step.a0 <= static_cast<std::int64_t>(g) ? 1 : 0; });
    if (gained != landing || lost != step.T.size() || gained > lost) {
      record({{"step", i}, {"claim", "cardinality_exchange"}, {"gained", gained}, {"lost", lost}});
    }
    if (!check_dyson_bound(step.after).holds) record({{"step", i}, {"claim", "dyson_bound_after"}});
  }
  SuiteOutcome out;
  out.verdict = verdict_of(ok);
  out.detail["steps"] = trace.steps.size();
  out.detail["initial_An"] = initial;
  if (!failures.empty()) out.detail["failures"] = std::move(failures);
  return out;
}

// ---------------------------------------------------------------------------
// group suites

SuiteOutcome eval_etransform(const Instance& instance) {
  const auto& [a, b] = std::get<GroupPair>(instance);
  std::size_t checked = 0;
  json failures = json::array();
  a.members().for_each([&](std::size_t e) {
    ++checked;
    const auto report = check_etransform_identities(a, b, e);
    if (!report.holds() && failures.size() < kDetailLimit) {
      failures.push_back({{"e", e},
                          {"sum_contained", report.sum_contained},
                          {"exchange_exact", report.exchange_exact},
                          {"cardinality_kept", report.cardinality_kept},
                          {"zero_kept", report.zero_kept}});
    }
  });
  SuiteOutcome out;
  out.verdict = verdict_of(failures.empty());
  out.detail["elements_checked"] = checked;
  if (!failures.empty()) out.detail["failures"] = std::move(failures);
  return out;
}

SuiteOutcome eval_pigeonhole(const Instance& instance) {
  const auto& [a, b] = std::get<GroupPair>(instance);
  const auto report = check_pigeonhole_cover(a, b);
  if (!report.applicable) return not_applicable("|A| + |B| <= |G|");
  SuiteOutcome out;
  out.verdict = verdict_of(report.holds);
  return out;
}

SuiteOutcome eval_chowla_cd(const Instance& instance) {
  const auto& [a, b] = std::get<GroupPair>(instance);
  const auto& group = a.group();
  if (!group.is_cyclic_presentation() || group.order() < 2) return not_applicable("needs a cyclic group Z/m, m >= 2");
  const std::size_t m = group.order();
  SuiteOutcome out;
  bool any = false;
  bool ok = true;
  const auto chowla = check_chowla_cd(m, a, b, ChowlaMode::chowla);
  out.detail["chowla"] = chowla.applicable ? json{{"sum", chowla.sum_size}, {"bound", chowla.bound}, {"holds", chowla.holds}}
                                           : json{{"reason", chowla.reason}};
  if (chowla.applicable) {
    any = true;
    ok = ok && chowla.holds;
    out.tight = out.tight || chowla.tight();
  }
  if (is_prime(m)) {
    const auto cd = check_chowla_cd(m, a, b, ChowlaMode::cauchy_davenport);
    any = true;
    ok = ok && cd.holds;
    out.tight = out.tight || cd.tight();
    out.detail["cauchy_davenport"] = {{"sum", cd.sum_size}, {"bound", cd.bound}, {"holds", cd.holds}};
  }
  const auto descent = check_chowla_descent(a, b);
  if (descent.applicable) {
    any = true;
    ok = ok && descent.holds;
    out.detail["descent"] = descent.holds;
  }
  if (!any) return not_applicable(chowla.reason + "; modulus not prime");
  out.verdict = verdict_of(ok);
  return out;
}

std::shared_ptr<const std::vector<Subgroup>> lattice_for(const FiniteAbelianGroup& group) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const std::vector<Subgroup>>> cache;
  const std::string key = group.to_string();
  const std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_shared<const std::vector<Subgroup>>(enumerate_subgroups(group))).first;
  }
  return it->second;
}

SuiteOutcome eval_kneser(const Instance& instance) {
  const auto& [a, b] = std::get<GroupPair>(instance);
  std::shared_ptr<const std::vector<Subgroup>> lattice;
  if (a.group().order() <= kDefaultSubgroupCap) lattice = lattice_for(a.group());
  const KneserReport report =
      lattice ? check_kneser(a, b, std::span<const Subgroup>(*lattice)) : check_kneser(a, b);
  if (!report.existence_applicable && !report.stabilizer_applicable) {
    return not_applicable("|A| + |B| > |G| and |A + B| >= |A| + |B|");
  }
  SuiteOutcome out;
  out.verdict = verdict_of(report.holds());
  out.tight = report.tight;
  out.detail["sum"] = report.sum_size;
  out.detail["stabilizer_order"] = report.stabilizer_order;
  if (report.existence_applicable) {
    out.detail["existence"] = {{"witness_order", report.witness_order},
                               {"witness_holds", report.witness_holds},
                               {"audit", report.audit_performed ? json(report.audit_witnesses) : json("skipped")}};
    if (report.curiosity) out.detail["curiosity"] = true;
  }
  if (report.stabilizer_applicable) {
    out.detail["stabilizer"] = {{"A+H", report.a_plus_h}, {"B+H", report.b_plus_h}, {"holds", report.stabilizer_holds}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// density suites

SuiteOutcome eval_density_oracle(const Instance& instance) {
  const auto& set = std::get<EventuallyPeriodicSet>(instance);
  const Rational sigma = shnirelman_density(set);
  const Rational limit = lower_density(set);
  const std::uint64_t span = set.threshold() + set.period();
  const std::uint64_t horizon = 10 * span;

  bool ok = true;
  json failures = json::array();
  const auto record = [&](std::string claim, std::uint64_t n) {
    ok = false;
    if (failures.size() < kDetailLimit) failures.push_back({{"claim", std::move(claim)}, {"n", n}});
  };

  // Brute-force prefix scan by direct membership.
  std::optional<Rational> brute;
  std::uint64_t running = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    running += set.contains(n) ? 1 : 0;
    if (count_ep(set, n) != running) record("count_closed_form", n);
    const Rational ratio(static_cast<std::int64_t>(running), static_cast<std::int64_t>(n));
    if (sigma > ratio) record("sigma_not_lower_bound", n);
    if (!brute || ratio < *brute) brute = ratio;
  }
  if (*brute <= limit ? sigma != *brute : sigma != limit) record("sigma_closed_form", horizon);

  // |S(n)/n - |R|/m| <= (N + m)/n at n = j m K with K = N + 1, j = 1000.
  const std::uint64_t n = 1000 * set.period() * (set.threshold() + 1);
  const Rational deviation = Rational(static_cast<std::int64_t>(count_ep(set, n)), static_cast<std::int64_t>(n)) - limit;
  const Rational allowed(static_cast<std::int64_t>(span), static_cast<std::int64_t>(n));
  if (deviation > allowed || -deviation > allowed) record("lower_density_limit", n);

  SuiteOutcome out;
  out.verdict = verdict_of(ok);
  out.detail["sigma"] = sigma.to_string();
  out.detail["d_L"] = limit.to_string();
  if (!failures.empty()) out.detail["failures"] = std::move(failures);
  return out;
}

SuiteOutcome eval_congruence(const Instance& instance) {
  const auto& [k, l, m] = std::get<CongruenceParams>(instance);
  if (k + l > m) return not_applicable("k + l > m");
  const CongruenceExample ex = congruence_example(k, l, m);
  const auto ki = static_cast<std::int64_t>(k);
  const auto li = static_cast<std::int64_t>(l);
  const auto mi = static_cast<std::int64_t>(m);

  json failures = json::array();
  if (lower_density(ex.a) != Rational(ki, mi)) failures.push_back("d_L(A) != k/m");
  if (lower_density(ex.b) != Rational(li, mi)) failures.push_back("d_L(B) != l/m");
  if (ex.predicted != Rational(ki + li - 1, mi)) failures.push_back("predicted != (k+l-1)/m");
  if (lower_density(ex.sum) != ex.predicted) failures.push_back("d_L(A+B) != predicted");
  if (!(ex.predicted < lower_density(ex.a) + lower_density(ex.b))) failures.push_back("not below d_L(A) + d_L(B)");

  // Residues of A + B against the Minkowski sum of the residue sets in Z/m.
  const auto group = FiniteAbelianGroup::cyclic(m);
  const auto residues_of = [&](const EventuallyPeriodicSet& s) {
    Bitset bits(m);
    const std::uint64_t base = (s.threshold() / m + 1) * m;  // past the head
    for (std::size_t r = 0; r < m; ++r) bits.assign(r, s.contains(base + r));
    return GroupSubset(group, std::move(bits));
  };
  if (residues_of(ex.sum) != minkowski_sum(residues_of(ex.a), residues_of(ex.b))) {
    failures.push_back("residues(A+B) != residues(A) + residues(B)");
  }
  SuiteOutcome out;
  out.verdict = verdict_of(failures.empty());
  out.detail["predicted"] = ex.predicted.to_string();
  if (!failures.empty()) out.detail["failures"] = std::move(failures);
  return out;
}

// ---------------------------------------------------------------------------
// defaults

GeneratorConfig family_defaults(std::size_t g_max, std::size_t n) {
  GeneratorConfig c;
  c.g_min = 1;
  c.g_max = g_max;
  c.n_min = n;
  c.n_max = n;
  return c;
}

GeneratorConfig group_defaults(std::vector<FiniteAbelianGroup> groups) {
  GeneratorConfig c;
  c.groups = std::move(groups);
  return c;
}

const Suite kSuites[] = {
    {"dyson-bound", InstanceKind::family, "dyson.rank_bound", true, eval_dyson_bound,
     [] { return family_defaults(4, 2); }},
    {"mann", InstanceKind::family, "mann.fundamental+corollary", false, eval_mann,
     [] { return family_defaults(6, 2); }},
    {"shnirelman-prefix", InstanceKind::family, "shnirelman.prefix_inequality", false, eval_shnirelman_prefix,
     [] { return family_defaults(6, 2); }},
    {"basis2", InstanceKind::family, "shnirelman.half_density_basis2", false, eval_basis2,
     [] { return family_defaults(12, 1); }},
    {"transform-lemmas", InstanceKind::family, "dyson.transform_lemmas", false, eval_transform_lemmas,
     [] { return family_defaults(4, 2); }},
    {"etransform", InstanceKind::group_pair, "group.e_transform_identities", false, eval_etransform,
     [] { return group_defaults(cyclic_groups(1, 5)); }},
    {"pigeonhole", InstanceKind::group_pair, "group.pigeonhole_cover", false, eval_pigeonhole,
     [] { return group_defaults(cyclic_groups(1, 6)); }},
    {"chowla-cd", InstanceKind::group_pair, "group.chowla_cauchy_davenport", true, eval_chowla_cd,
     [] { return group_defaults(cyclic_groups(2, 7)); }},
    {"kneser", InstanceKind::group_pair, "group.kneser", true, eval_kneser,
     [] { return group_defaults({FiniteAbelianGroup::cyclic(6)}); }},
    {"density-oracle", InstanceKind::periodic_set, "density.closed_forms", false, eval_density_oracle,
     [] {
       GeneratorConfig c;
       c.mode = GenMode::random;
       c.count = 1000;
       c.g_min = 0;
       c.g_max = 20;
       c.n_min = 1;
       c.n_max = 12;
       return c;
     }},
    {"congruence-example", InstanceKind::congruence, "density.congruence_example", false, eval_congruence,
     [] {
       GeneratorConfig c;
       c.g_min = 2;
       c.g_max = 12;
       return c;
     }},
};

}  // namespace

std::span<const Suite> all_suites() { return kSuites; }

const Suite& find_suite(std::string_view id) {
  for (const auto& suite : kSuites) {
    if (suite.id == id) return suite;
  }
  std::string known;
  for (const auto& suite : kSuites) known += (known.empty() ? "" : ", ") + std::string(suite.id);
  throw UsageError("unknown suite '" + std::string(id) + "' (known: " + known + ")");
}

json config_to_json(const GeneratorConfig& config) {
  json j;
  j["mode"] = config.mode == GenMode::exhaustive ? "exhaustive" : "random";
  if (config.mode == GenMode::random) {
    j["seed"] = config.seed;
    j["count"] = config.count;
    j["density"] = config.density;
  }
  j["g"] = {config.g_min, config.g_max};
  j["n"] = {config.n_min, config.n_max};
  if (!config.groups.empty()) {
    json groups = json::array();
    for (const auto& g : config.groups) groups.push_back(g.to_string());
    j["groups"] = std::move(groups);
  }
  j["nonempty_sets"] = config.nonempty_sets;
  j["budget"] = config.budget;
  return j;
}

json SuiteReport::to_json(bool include_elapsed) const {
  json j;
  j["v"] = Witness::kSchemaVersion;
  j["suite"] = suite;
  j["config"] = config;
  j["counts"] = {{"pass", counts.pass}, {"fail", counts.fail}, {"not_applicable", counts.not_applicable}};
  j["instances"] = counts.total();
  if (include_elapsed) j["elapsed_ms"] = elapsed.count();
  json fail_list = json::array();
  for (const auto& w : fails) fail_list.push_back(w.to_json());
  j["fails"] = std::move(fail_list);
  if (!tight.empty()) {
    json tight_list = json::array();
    for (const auto& w : tight) tight_list.push_back(w.to_json());
    j["tight"] = std::move(tight_list);
  }
  if (sink_errors != 0) j["sink_errors"] = sink_errors;
  return j;
}

namespace {

SuiteOutcome evaluate_guarded(const Suite& suite, const Instance& instance) {
  try {
    return suite.evaluate(instance);
  } catch (const std::exception& e) {
    SuiteOutcome out;
    out.verdict = Verdict::fail;
    out.detail["error"] = e.what();
    return out;
  }
}

}  // namespace

SuiteReport run_suite(std::string_view suite_id, const RunOptions& options) {
  const Suite& suite = find_suite(suite_id);
  if (options.collect_tight && !suite.supports_tight) {
    throw UsageError("suite '" + std::string(suite_id) + "' has no tightness notion");
  }
  const auto start = std::chrono::steady_clock::now();
  InstanceStream stream(suite.kind, options.generator);

  SuiteReport report;
  report.suite = std::string(suite.id);
  report.config = config_to_json(options.generator);

  constexpr std::size_t kBatch = 1024;
  const unsigned threads = std::max(1U, options.threads);
  std::vector<Instance> batch;
  std::vector<SuiteOutcome> outcomes;
  batch.reserve(kBatch);
  std::uint64_t passes = 0;

  while (true) {
    batch.clear();
    while (batch.size() < kBatch) {
      auto next = stream.next();
      if (!next) break;
      batch.push_back(std::move(*next));
    }
    if (batch.empty()) break;

    outcomes.assign(batch.size(), SuiteOutcome{});
    if (threads == 1 || batch.size() == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) outcomes[i] = evaluate_guarded(suite, batch[i]);
    } else {
      std::vector<std::jthread> workers;
      const std::size_t used = std::min<std::size_t>(threads, batch.size());
      for (std::size_t t = 0; t < used; ++t) {
        workers.emplace_back([&, t] {
          for (std::size_t i = t; i < batch.size(); i += used) outcomes[i] = evaluate_guarded(suite, batch[i]);
        });
      }
    }

    for (std::size_t i = 0; i < batch.size(); ++i) {
      SuiteOutcome& outcome = outcomes[i];
      bool log = false;
      switch (outcome.verdict) {
        case Verdict::pass:
          ++report.counts.pass;
          log = options.log_pass_every != 0 && passes++ % options.log_pass_every == 0;
          break;
        case Verdict::fail:
          ++report.counts.fail;
          log = true;
          break;
        case Verdict::not_applicable:
          ++report.counts.not_applicable;
          log = options.log_not_applicable;
          break;
      }
      const bool keep_tight = options.collect_tight && outcome.tight;
      if (!log && !keep_tight && outcome.verdict != Verdict::fail) continue;

      Witness w{std::string(suite.id), encode(batch[i]), std::string(suite.claim), outcome.verdict,
                std::move(outcome.detail)};
      if (log && options.sink != nullptr && !log_witness(w, *options.sink)) ++report.sink_errors;
      if (keep_tight) report.tight.push_back(w);
      if (w.verdict == Verdict::fail) report.fails.push_back(std::move(w));
    }
  }

  report.elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

Witness replay(const Witness& logged) {
  const Suite& suite = find_suite(logged.suite);
  const Instance instance = decode(suite.kind, logged.instance);
  SuiteOutcome outcome = evaluate_guarded(suite, instance);
  return {std::string(suite.id), encode(instance), std::string(suite.claim), outcome.verdict,
          std::move(outcome.detail)};
}

}  // namespace sumsetlab::harness
