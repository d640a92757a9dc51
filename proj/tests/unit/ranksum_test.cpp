#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "../oracles.hpp"
#include "sumsetlab/errors.hpp"
#include "sumsetlab/ranksum.hpp"

namespace {

using namespace sumsetlab;

SetFamily random_family(std::mt19937_64& rng, std::size_t g, std::size_t n) {
  std::vector<BoundedIntSet> sets;
  for (std::size_t i = 0; i < n; ++i) sets.push_back(oracle::from_set(g, oracle::from_mask(rng(), g)));
  return SetFamily(g, sets);
}

std::vector<oracle::Set> plain(const SetFamily& f) {
  std::vector<oracle::Set> out;
  for (const auto& s : f.sets()) out.push_back(oracle::to_set(s));
  return out;
}

const SetFamily kSmall = SetFamily::parse("g=3;{1};{1,2}");

TEST(SetFamily, TextRoundTrip) {
  const auto f = SetFamily::parse("g=5;{1,2};{1};{2,5}");
  EXPECT_EQ(f.size(), 3U);
  EXPECT_EQ(f.bound(), 5U);
  EXPECT_EQ(f.set(3), BoundedIntSet::from_members(5, {2, 5}));
  EXPECT_EQ(f.to_string(), "g=5;{1,2};{1};{2,5}");
  EXPECT_THROW(SetFamily::parse("g=2;{3}"), ParseError);
  EXPECT_THROW(SetFamily::parse("g=2"), ParseError);
  EXPECT_THROW(f.set(0), RangeError);
}

TEST(RankSubsets, Examples) {
  EXPECT_EQ(rank_subsets(3, 2), (std::vector<IndexSet>{{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(rank_subsets(4, 4), (std::vector<IndexSet>{{1, 2, 3, 4}}));
  EXPECT_EQ(rank_subsets(4, 2).size(), 6U);
  EXPECT_THROW(rank_subsets(3, 0), ContractViolation);
  EXPECT_THROW(rank_subsets(3, 4), ContractViolation);
}

TEST(RankSubsets, CountsAreBinomial) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t r = 1; r <= n; ++r) {
      const auto subsets = rank_subsets(n, r);
      EXPECT_EQ(subsets.size(), oracle::choose(n, r));
      EXPECT_TRUE(std::is_sorted(subsets.begin(), subsets.end()));
      EXPECT_EQ(binomial(n, r), oracle::choose(n, r));
    }
  }
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi(kSmall, 2, 3), 3U);
  EXPECT_EQ(phi(kSmall, 1, 3), 3U);
  EXPECT_THROW(phi(kSmall, 3, 1), RangeError);
  EXPECT_THROW(phi(kSmall, 1, 4), RangeError);
}

TEST(Phi, ClosedFormsForExtremeRanks) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t g = 1 + rng() % 20, n = 1 + rng() % 5;
    const auto f = random_family(rng, g, n);
    const RankProfile profile(f);
    const auto whole = shnirelman_sumset(f.sets(), g);
    for (std::size_t m = 1; m <= g; ++m) {
      std::uint64_t singles = 0;
      for (const auto& s : f.sets()) singles += count(s, static_cast<std::int64_t>(m));
      EXPECT_EQ(profile.phi(1, m), singles);
      EXPECT_EQ(profile.phi(n, m), count(whole, static_cast<std::int64_t>(m)));
    }
  }
}

TEST(Phi, ProfileAndDirectPathAgreeWithOracle) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t g = 1 + rng() % 10, n = 1 + rng() % 4;
    const auto f = random_family(rng, g, n);
    const RankProfile profile(f);
    const auto p = plain(f);
    for (std::size_t r = 1; r <= n; ++r) {
      for (std::size_t m = 1; m <= g; ++m) {
        const auto expected = oracle::phi(p, r, static_cast<std::int64_t>(g), static_cast<std::int64_t>(m));
        ASSERT_EQ(profile.phi(r, m), expected) << f.to_string() << " r=" << r << " m=" << m;
        ASSERT_EQ(phi(f, r, m), expected);
      }
    }
  }
}

TEST(Phi, PascalWhenLastSetEmpty) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t g = 1 + rng() % 12, n = 2 + rng() % 4;
    auto f = random_family(rng, g, n);
    f = f.with_set(n, BoundedIntSet(g));
    std::vector<BoundedIntSet> head(f.sets().begin(), f.sets().end() - 1);
    const RankProfile full(f), shorter(SetFamily(g, head));
    for (std::size_t m = 1; m <= g; ++m) {
      EXPECT_EQ(full.phi(1, m), shorter.phi(1, m));
      for (std::size_t r = 2; r < n; ++r) EXPECT_EQ(full.phi(r, m), shorter.phi(r, m) + shorter.phi(r - 1, m));
      EXPECT_EQ(full.phi(n, m), shorter.phi(n - 1, m));
    }
  }
}

TEST(Phi, InvariantUnderPermutation) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t g = 1 + rng() % 12, n = 2 + rng() % 3;
    const auto f = random_family(rng, g, n);
    auto sets = f.sets();
    std::shuffle(sets.begin(), sets.end(), rng);
    const RankProfile a(f), b(SetFamily(g, sets));
    for (std::size_t r = 1; r <= n; ++r) {
      for (std::size_t m = 1; m <= g; ++m) EXPECT_EQ(a.phi(r, m), b.phi(r, m));
    }
  }
}

TEST(GammaStar, Examples) {
  // phi_1 = 2, 3, 3 on m = 1, 2, 3.
  EXPECT_EQ(gamma_star(kSmall), Rational(1));
  EXPECT_EQ(gamma_star(SetFamily(4, std::vector<BoundedIntSet>(3, BoundedIntSet::interval(4)))), Rational(3));
  EXPECT_EQ(gamma_star(SetFamily(4, std::vector<BoundedIntSet>(2, BoundedIntSet(4)))), Rational(0));
}

TEST(DysonBound, Examples) {
  EXPECT_TRUE(check_dyson_bound(SetFamily::parse("g=3;{1,3}")).holds);
  const auto report = check_dyson_bound(kSmall);
  EXPECT_TRUE(report.holds);
  EXPECT_EQ(report.gamma_star, Rational(1));
  EXPECT_TRUE(report.violations.empty());
}

TEST(DysonBound, ExhaustiveSmallFamiliesAgainstOracle) {
  for (std::size_t g = 1; g <= 3; ++g) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << (g * n)); ++code) {
        std::vector<oracle::Set> p;
        std::vector<BoundedIntSet> sets;
        for (std::size_t i = 0; i < n; ++i) {
          p.push_back(oracle::from_mask(code >> (i * g), g));
          sets.push_back(oracle::from_set(g, p.back()));
        }
        const SetFamily f(g, sets);
        const auto report = check_dyson_bound(f);
        ASSERT_EQ(report.holds, oracle::dyson_bound_holds(p, static_cast<std::int64_t>(g))) << f.to_string();
        ASSERT_EQ(report.gamma_star, oracle::gamma_star(p, static_cast<std::int64_t>(g)));
      }
    }
  }
}

TEST(DysonBound, FlagsAnInflatedGamma) {
  // Neither set contains 1, so gamma = 1 overstates phi_1(1) = 0.
  const auto f = SetFamily::parse("g=2;{2};{2}");
  const auto report = check_dyson_bound(RankProfile(f), Rational(1));
  EXPECT_FALSE(report.holds);
  EXPECT_FALSE(report.violations.empty());
  EXPECT_EQ(report.violations.front().m, 1U);
}

TEST(Mann, Examples) {
  const auto one = BoundedIntSet::from_members(2, {1});
  const auto r1 = check_mann(one, one, 2);
  EXPECT_TRUE(r1.full);
  EXPECT_TRUE(r1.holds());

  const auto two = BoundedIntSet::from_members(4, {2});
  const auto r2 = check_mann(two, two, 3);
  EXPECT_EQ(r2.sum_count, 1U);
  ASSERT_TRUE(r2.gap_minimum.has_value());
  EXPECT_EQ(*r2.gap_minimum, Rational(0));
  EXPECT_TRUE(r2.holds());
  EXPECT_THROW(check_mann(two, two, 5), RangeError);
}

TEST(Mann, ExhaustiveAgainstOracle) {
  constexpr std::size_t g = 6;
  for (std::uint32_t ma = 0; ma < (1U << g); ++ma) {
    for (std::uint32_t mb = 0; mb < (1U << g); ++mb) {
      const auto a = oracle::from_mask(ma, g), b = oracle::from_mask(mb, g);
      const auto c = oracle::sumset({a, b}, g);
      for (std::size_t n = 1; n <= g; ++n) {
        const auto cn = oracle::count(c, static_cast<std::int64_t>(n));
        std::optional<Rational> gap;
        Rational gamma(1000);
        for (std::size_t m = 1; m <= n; ++m) {
          const auto v = oracle::ratio(oracle::count(a, m) + oracle::count(b, m), m);
          gamma = std::min(gamma, v);
          if (c.count(static_cast<std::int64_t>(m)) == 0) gap = gap ? std::min(*gap, v) : v;
        }
        const bool fundamental = cn == n || oracle::ratio(cn, n) >= *gap;
        const bool corollary = Rational(static_cast<std::int64_t>(cn)) >= std::min(Rational(1), gamma) * n;
        const auto r = check_mann(oracle::from_set(g, a), oracle::from_set(g, b), n);
        ASSERT_EQ(r.sum_count, cn);
        ASSERT_EQ(r.gap_minimum, gap);
        ASSERT_EQ(r.gamma, gamma);
        ASSERT_EQ(r.fundamental_holds, fundamental);
        ASSERT_EQ(r.corollary_holds, corollary);
        ASSERT_TRUE(r.holds());
      }
    }
  }
}

TEST(ShnirelmanPrefix, Examples) {
  std::vector<std::int64_t> odd{1, 3, 5, 7, 9};
  const auto a = BoundedIntSet::from_members(10, odd);
  const auto r = check_shnirelman_prefix(a, a);
  EXPECT_EQ(r.alpha, Rational(1, 2));
  EXPECT_EQ(r.coefficient, Rational(3, 4));
  EXPECT_TRUE(r.holds);
  const auto e = check_shnirelman_prefix(a, BoundedIntSet(10));
  EXPECT_EQ(e.beta, Rational(0));
  EXPECT_TRUE(e.holds);
}

TEST(ShnirelmanPrefix, NeverFailsWhereMannHolds) {
  constexpr std::size_t g = 6;
  for (std::uint32_t ma = 0; ma < (1U << g); ++ma) {
    for (std::uint32_t mb = 0; mb < (1U << g); ++mb) {
      const auto a = oracle::from_set(g, oracle::from_mask(ma, g));
      const auto b = oracle::from_set(g, oracle::from_mask(mb, g));
      const auto r = check_shnirelman_prefix(a, b);
      const auto c = oracle::sumset({oracle::to_set(a), oracle::to_set(b)}, g);
      bool expected = true;
      for (std::size_t m = 1; m <= g; ++m) {
        expected = expected && Rational(static_cast<std::int64_t>(oracle::count(c, m))) >= r.coefficient * m;
      }
      ASSERT_EQ(r.holds, expected);
      ASSERT_TRUE(r.holds);
    }
  }
}

}  // namespace
