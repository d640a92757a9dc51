#include "sumsetlab/dyson.hpp"

#include <random>
#include <set>
#include <stdexcept>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

namespace {

void require_two_sets(const SetFamily& family, const char* op) {
  if (family.size() < 2) throw ContractViolation(std::string(op) + ": requires a family with n >= 2");
}

// Whether some c in A_n n [1, g] makes (a, ell, c) a triple, given that a
// already satisfies condition (iii).
bool admits_triple(const SetFamily& family, std::int64_t a, std::size_t ell) {
  const auto g = static_cast<std::int64_t>(family.bound());
  const Bitset& last = family.set(family.size()).bits();
  if (a > g) return last.any();
  // c with a + c > g, i.e. c > g - a.
  if (last.find_next(static_cast<std::size_t>(g - a + 1)) != Bitset::npos) return true;
  // Otherwise need some c with a + c not in A_ell.
  const Bitset shifted = last.shifted_left(static_cast<std::size_t>(a));
  return !shifted.is_subset_of(family.set(ell).bits());
}

bool condition_iii(const SetFamily& family, std::int64_t a, std::size_t ell) {
  const auto g = static_cast<std::int64_t>(family.bound());
  return a == 0 || a > g || family.set(ell).contains(a);
}

}  // namespace

bool is_dyson_triple(const SetFamily& family, std::int64_t a, std::size_t ell, std::int64_t c) {
  require_two_sets(family, "is_dyson_triple");
  const auto g = static_cast<std::int64_t>(family.bound());
  const std::size_t n = family.size();
  if (!(c >= 1 && c <= g && family.set(n).contains(c))) return false;  // (i)
  if (!(ell >= 1 && ell <= n - 1)) return false;                        // (ii)
  if (!condition_iii(family, a, ell)) return false;                     // (iii)
  return !family.set(ell).contains(a + c) || a + c > g;                 // (iv)
}

DysonTriple DysonTriple::make(const SetFamily& family, std::int64_t a, std::size_t ell, std::int64_t c) {
  if (!is_dyson_triple(family, a, ell, c)) {
    throw PreconditionError("DysonTriple: (" + std::to_string(a) + ", " + std::to_string(ell) + ", " +
                            std::to_string(c) + ") violates the triple conditions for " + family.to_string());
  }
  return {a, ell, c};
}

MinimalTriple find_minimal_triple(const SetFamily& family) {
  if (family.size() < 2) throw PreconditionError("find_minimal_triple: requires n >= 2");
  if (family.set(family.size()).empty()) {
    throw PreconditionError("find_minimal_triple: A_n has no element in [1, g]");
  }
  const auto g = static_cast<std::int64_t>(family.bound());
  for (std::int64_t a = 0; a <= g + 1; ++a) {
    for (std::size_t ell = 1; ell < family.size(); ++ell) {
      if (condition_iii(family, a, ell) && admits_triple(family, a, ell)) return {a, ell};
    }
  }
  // a = g + 1 with ell = 1 always admits a triple once A_n is nonempty.
  throw std::logic_error("find_minimal_triple: no triple found");
}

BoundedIntSet build_T(const SetFamily& family, std::int64_t a0, std::size_t ell) {
  const std::size_t g = family.bound();
  const BoundedIntSet& last = family.set(family.size());
  const BoundedIntSet& target = family.set(ell);
  BoundedIntSet in_target = a0 <= static_cast<std::int64_t>(g) ? translate(target, -a0, g) : BoundedIntSet(g);
  // c with c + a0 in A_ell (and hence <= g) stay in A_n; everything else moves.
  return set_difference(last, in_target);
}

TransformStep apply_transform(const SetFamily& family) {
  const auto [a0, ell] = find_minimal_triple(family);
  const std::size_t g = family.bound();
  const std::size_t n = family.size();
  BoundedIntSet t = build_T(family, a0, ell);
  SetFamily after = family.with_set(n, set_difference(family.set(n), t))
                        .with_set(ell, set_union(family.set(ell), translate(t, a0, g)));
  return {a0, ell, std::move(t), family, std::move(after)};
}

bool step_invariants_hold(const TransformStep& step) {
  const SetFamily& before = step.before;
  const SetFamily& after = step.after;
  const std::size_t n = before.size();
  const std::size_t g = before.bound();
  if (after.size() != n || after.bound() != g) return false;
  if (step.T.empty() || !is_subset(step.T, before.set(n))) return false;
  if (after.set(n) != set_difference(before.set(n), step.T)) return false;
  if (after.set(step.ell) != set_union(before.set(step.ell), translate(step.T, step.a0, g))) return false;
  for (std::size_t i = 1; i < n; ++i) {
    if (i != step.ell && after.set(i) != before.set(i)) return false;
  }
  return after.set(n).size() < before.set(n).size();
}

TransformTrace iterate_transform(const SetFamily& family) {
  require_two_sets(family, "iterate_transform");
  TransformTrace trace{{}, family};
  const std::size_t limit = family.set(family.size()).size();
  while (!trace.terminal.set(trace.terminal.size()).empty()) {
    TransformStep step = apply_transform(trace.terminal);
    if (!step_invariants_hold(step)) {
      throw std::logic_error("iterate_transform: step invariants violated at " + step.before.to_string());
    }
    trace.terminal = step.after;
    trace.steps.push_back(std::move(step));
    if (trace.steps.size() > limit) throw std::logic_error("iterate_transform: exceeded A_n(g) steps");
  }
  return trace;
}

LemmaReport check_lemmas(const TransformStep& step, const Rational& gamma,
                         std::span<const BoundedIntSet> test_sets) {
  LemmaReport report;
  report.test_sets = test_sets.size();
  const SetFamily& before = step.before;
  const SetFamily& after = step.after;
  const std::size_t n = before.size();
  const std::size_t g = before.bound();
  const auto a0 = step.a0;

  const BoundedIntSet& a_ell = before.set(step.ell);
  const BoundedIntSet& a_n = before.set(n);
  const BoundedIntSet& a_ell_new = after.set(step.ell);
  const BoundedIntSet& a_n_new = after.set(n);

  for (std::size_t idx = 0; idx < test_sets.size(); ++idx) {
    const BoundedIntSet& s = test_sets[idx];
    if (s.bound() != g) throw ContractViolation("check_lemmas: test set bound differs from family bound");
    const BoundedIntSet s_ell = shnirelman_sumset(s, a_ell);
    const BoundedIntSet s_ell_new = shnirelman_sumset(s, a_ell_new);
    const BoundedIntSet s_n = shnirelman_sumset(s, a_n);
    const BoundedIntSet s_n_new = shnirelman_sumset(s, a_n_new);
    const BoundedIntSet s_pair = shnirelman_sumset(s_ell, a_n);
    const BoundedIntSet s_pair_new = shnirelman_sumset(s_ell_new, a_n_new);
    for (std::size_t hu = 1; hu <= g; ++hu) {
      const auto h = static_cast<std::int64_t>(hu);
      if (s_ell_new.contains(h) && !s_ell.contains(h)) {
        const std::int64_t down = h - a0;
        if (!(s_n.contains(down) && !s_n_new.contains(down))) report.lemma1.push_back({idx, h, 1});
      }
      if (s_pair_new.contains(h) && !s_pair.contains(h)) report.lemma1.push_back({idx, h, 2});
    }
  }

  const RankProfile old_profile(before);
  const RankProfile new_profile(after);
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t m = 1; m <= g; ++m) {
      if (new_profile.phi(r, m) > old_profile.phi(r, m)) {
        report.lemma2.push_back({r, m, old_profile.phi(r, m), new_profile.phi(r, m)});
      }
    }
  }

  const Rational delta = std::min(Rational(1), gamma);
  for (std::size_t m = 1; m <= g; ++m) {
    const auto value = new_profile.phi(1, m);
    if (Rational(static_cast<std::int64_t>(value)) < delta * Rational(static_cast<std::int64_t>(m))) {
      report.lemma3.push_back({1, m, old_profile.phi(1, m), value});
    }
  }
  return report;
}

std::vector<BoundedIntSet> lemma1_test_sets(const SetFamily& family, std::uint64_t seed, std::size_t random_sets) {
  const std::size_t g = family.bound();
  std::vector<BoundedIntSet> out;
  if (g <= 6) {
    const std::size_t total = std::size_t{1} << g;
    out.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
      Bitset bits(g + 1);
      for (std::size_t i = 0; i < g; ++i) {
        if ((mask >> i) & 1U) bits.set(i + 1);
      }
      out.emplace_back(g, std::move(bits));
    }
    return out;
  }

  std::set<Bitset> seen;
  const auto add = [&](BoundedIntSet s) {
    if (seen.insert(s.bits()).second) out.push_back(std::move(s));
  };
  add(BoundedIntSet(g));
  for (std::size_t r = 1; r <= family.size(); ++r) {
    for (const auto& subset : rank_subsets(family.size(), r)) add(rank_sum(family, subset));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < random_sets; ++k) {
    Bitset bits(g + 1);
    for (std::size_t i = 1; i <= g; ++i) {
      if ((rng() >> 63) != 0) bits.set(i);
    }
    add(BoundedIntSet(g, std::move(bits)));
  }
  return out;
}

}  // namespace sumsetlab
