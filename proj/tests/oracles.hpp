#pragma once

// Brute-force reference implementations used as test oracles. Everything
// here works on std::set and plain loops and shares no code with the
// library beyond the types it converts from.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "sumsetlab/abgroup.hpp"
#include "sumsetlab/intset.hpp"
#include "sumsetlab/rational.hpp"
#include "sumsetlab/ranksum.hpp"

namespace oracle {

using Set = std::set<std::int64_t>;

inline Set to_set(const sumsetlab::BoundedIntSet& a) {
  const auto m = a.members();
  return {m.begin(), m.end()};
}

inline sumsetlab::BoundedIntSet from_set(std::size_t g, const Set& s) {
  std::vector<std::int64_t> v(s.begin(), s.end());
  return sumsetlab::BoundedIntSet::from_members(g, v);
}

inline Set from_mask(std::uint64_t mask, std::size_t g) {
  Set s;
  for (std::size_t i = 0; i < g; ++i) {
    if ((mask >> i) & 1U) s.insert(static_cast<std::int64_t>(i + 1));
  }
  return s;
}

inline std::size_t count(const Set& a, std::int64_t x) {
  return static_cast<std::size_t>(std::count_if(a.begin(), a.end(), [&](auto v) { return v >= 1 && v <= x; }));
}

// {x_1 + ... + x_k : x_i in A_i u {0}} within [1, g].
inline Set sumset(const std::vector<Set>& sets, std::int64_t g) {
  Set acc{0};
  for (const auto& s : sets) {
    Set next;
    for (auto x : acc) {
      next.insert(x);
      for (auto y : s) {
        if (x + y <= g) next.insert(x + y);
      }
    }
    acc = std::move(next);
  }
  acc.erase(0);
  return acc;
}

inline Set hfold(const Set& a, std::size_t h, std::int64_t g) { return sumset(std::vector<Set>(h, a), g); }

inline sumsetlab::Rational ratio(std::uint64_t p, std::uint64_t q) {
  return {static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)};
}

inline std::uint64_t phi(const std::vector<Set>& family, std::size_t r, std::int64_t g, std::int64_t m) {
  const std::size_t n = family.size();
  std::uint64_t total = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != r) continue;
    std::vector<Set> chosen;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) chosen.push_back(family[i]);
    }
    total += count(sumset(chosen, g), m);
  }
  return total;
}

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

inline sumsetlab::Rational gamma_star(const std::vector<Set>& family, std::int64_t g) {
  sumsetlab::Rational best(1000000);
  for (std::int64_t m = 1; m <= g; ++m) best = std::min(best, ratio(phi(family, 1, g, m), m));
  return best;
}

inline bool dyson_bound_holds(const std::vector<Set>& family, std::int64_t g) {
  const auto delta = std::min(sumsetlab::Rational(1), gamma_star(family, g));
  const std::size_t n = family.size();
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::int64_t m = 1; m <= g; ++m) {
      const auto lhs = sumsetlab::Rational(static_cast<std::int64_t>(phi(family, r, g, m)));
      if (lhs < sumsetlab::Rational(static_cast<std::int64_t>(choose(n - 1, r - 1))) * delta * m) return false;
    }
  }
  return true;
}

// Conditions (i)-(iv) of a triple, straight from the definition.
inline bool is_triple(const std::vector<Set>& family, std::int64_t g, std::int64_t a, std::size_t ell, std::int64_t c) {
  const std::size_t n = family.size();
  if (ell < 1 || ell > n - 1) return false;
  const Set& a_ell = family[ell - 1];
  const Set& a_n = family[n - 1];
  const bool i = a_n.count(c) != 0 && c >= 1 && c <= g;
  const bool iii = a == 0 || a_ell.count(a) != 0 || a > g;
  const bool iv = a_ell.count(a + c) == 0 || a + c > g;
  return i && iii && iv;
}

inline std::pair<std::int64_t, std::size_t> minimal_triple(const std::vector<Set>& family, std::int64_t g) {
  for (std::int64_t a = 0; a <= g + 1; ++a) {
    for (std::size_t ell = 1; ell < family.size(); ++ell) {
      for (std::int64_t c = 1; c <= g; ++c) {
        if (is_triple(family, g, a, ell, c)) return {a, ell};
      }
    }
  }
  return {-1, 0};
}

// ---------------------------------------------------------------------------
// Groups as coordinate vectors.

using Coords = std::vector<std::size_t>;
using GSet = std::set<Coords>;

inline std::vector<Coords> all_elements(const std::vector<std::size_t>& moduli) {
  std::vector<Coords> out{Coords{}};
  for (auto m : moduli) {
    std::vector<Coords> next;
    for (const auto& prefix : out) {
      for (std::size_t x = 0; x < m; ++x) {
        auto c = prefix;
        c.push_back(x);
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline Coords add(const std::vector<std::size_t>& moduli, const Coords& x, const Coords& y) {
  Coords z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % moduli[i];
  return z;
}

inline Coords neg(const std::vector<std::size_t>& moduli, const Coords& x) {
  Coords z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = (moduli[i] - x[i]) % moduli[i];
  return z;
}

inline GSet minkowski(const std::vector<std::size_t>& moduli, const GSet& a, const GSet& b) {
  GSet out;
  for (const auto& x : a) {
    for (const auto& y : b) out.insert(add(moduli, x, y));
  }
  return out;
}

inline GSet translate(const std::vector<std::size_t>& moduli, const GSet& a, const Coords& e) {
  return minkowski(moduli, a, GSet{e});
}

inline GSet stabilizer(const std::vector<std::size_t>& moduli, const GSet& x) {
  GSet h;
  for (const auto& g : all_elements(moduli)) {
    if (translate(moduli, x, g) == x) h.insert(g);
  }
  return h;
}

// Every subgroup, by testing every subset for closure. Small groups only.
inline std::vector<GSet> subgroups(const std::vector<std::size_t>& moduli) {
  const auto elems = all_elements(moduli);
  std::vector<GSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << elems.size()); ++mask) {
    GSet s;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if ((mask >> i) & 1U) s.insert(elems[i]);
    }
    if (s.empty()) continue;
    bool closed = true;
    for (const auto& x : s) {
      for (const auto& y : s) {
        if (s.count(add(moduli, x, neg(moduli, y))) == 0) closed = false;
      }
    }
    if (closed) out.push_back(std::move(s));
  }
  return out;
}

inline GSet to_gset(const sumsetlab::GroupSubset& s) {
  GSet out;
  for (auto e : s.elements()) out.insert(s.group().coordinates(e));
  return out;
}

inline std::size_t gcd(std::size_t a, std::size_t b) { return std::gcd(a, b); }

}  // namespace oracle
