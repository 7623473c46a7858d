#pragma once

// Naive reference computations the tests compare library results against.
// Everything here favors the most literal possible algorithm over speed:
// full triple scans, permutation enumeration, subset bitmasks, odometer
// loops over all functions.  None of it shares code with the library paths
// it checks.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lrs/free_construction.hpp"
#include "lrs/semigroup.hpp"

namespace oracle {

inline std::optional<std::array<int, 3>> assoc_violation(
    const lrs::Table& t) {
  int n = static_cast<int>(t.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return {{a, b, c}};
  return std::nullopt;
}

// All associative tables of order n, in odometer order.  n <= 3 keeps the
// candidate space at 3^9.
inline std::vector<lrs::Table> all_semigroup_tables(int n) {
  std::vector<lrs::Table> out;
  std::vector<int> cells(n * n, 0);
  while (true) {
    lrs::Table t(n, std::vector<int>(n));
    for (int i = 0; i < n * n; ++i) t[i / n][i % n] = cells[i];
    if (!assoc_violation(t)) out.push_back(t);
    int pos = 0;
    while (pos < n * n && cells[pos] == n - 1) cells[pos++] = 0;
    if (pos == n * n) break;
    ++cells[pos];
  }
  return out;
}

inline std::optional<std::vector<int>> iso_by_permutations(
    const lrs::FiniteSemigroup& a, const lrs::FiniteSemigroup& b) {
  if (a.order != b.order) return std::nullopt;
  std::vector<int> perm(a.order);
  for (int i = 0; i < a.order; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (int x = 0; x < a.order && ok; ++x)
      for (int y = 0; y < a.order && ok; ++y)
        if (perm[a.table[x][y]] != b.table[perm[x]][perm[y]]) ok = false;
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

inline bool closed_subset(const lrs::FiniteSemigroup& s,
                          const std::vector<int>& subset) {
  std::vector<bool> in(s.order, false);
  for (int x : subset) in[x] = true;
  for (int x : subset)
    for (int y : subset)
      if (!in[s.table[x][y]]) return false;
  return true;
}

// Least closed subset of s (by size, then lexicographically) admitting a
// surjective homomorphism onto t, found by scanning every subset and every
// function.  Practical for s.order <= 8-ish with small t.
inline std::optional<std::vector<int>> divides_subset(
    const lrs::FiniteSemigroup& t, const lrs::FiniteSemigroup& s) {
  std::vector<std::vector<int>> subsets;
  for (std::uint32_t mask = 1; mask < (1u << s.order); ++mask) {
    std::vector<int> u;
    for (int i = 0; i < s.order; ++i)
      if ((mask >> i) & 1) u.push_back(i);
    subsets.push_back(std::move(u));
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const std::vector<int>& x, const std::vector<int>& y) {
              if (x.size() != y.size()) return x.size() < y.size();
              return x < y;
            });
  for (const auto& u : subsets) {
    if (u.size() < static_cast<size_t>(t.order)) continue;
    if (!closed_subset(s, u)) continue;
    int m = static_cast<int>(u.size());
    std::vector<int> f(m, 0);
    while (true) {
      bool hom = true;
      std::vector<int> pos(s.order, -1);
      for (int i = 0; i < m; ++i) pos[u[i]] = i;
      for (int i = 0; i < m && hom; ++i)
        for (int j = 0; j < m && hom; ++j)
          if (f[pos[s.table[u[i]][u[j]]]] != t.table[f[i]][f[j]]) hom = false;
      if (hom) {
        std::vector<bool> hit(t.order, false);
        for (int v : f) hit[v] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }))
          return u;
      }
      int p = 0;
      while (p < m && f[p] == t.order - 1) f[p++] = 0;
      if (p == m) break;
      ++f[p];
    }
  }
  return std::nullopt;
}

inline bool group_by_scan(const lrs::FiniteSemigroup& s) {
  int e = -1;
  for (int c = 0; c < s.order; ++c) {
    bool ident = true;
    for (int x = 0; x < s.order; ++x)
      if (s.table[c][x] != x || s.table[x][c] != x) {
        ident = false;
        break;
      }
    if (ident) {
      e = c;
      break;
    }
  }
  if (e < 0) return false;
  for (int x = 0; x < s.order; ++x) {
    bool inverse = false;
    for (int y = 0; y < s.order; ++y)
      if (s.table[x][y] == e && s.table[y][x] == e) {
        inverse = true;
        break;
      }
    if (!inverse) return false;
  }
  return true;
}

// Chain-compatible sequences for a word, by filtering the full product.
// Sequences come out in lexicographic order (first coordinate outermost).
inline std::vector<std::vector<int>> chain_tuples(
    const lrs::FreeGenData& gen, const std::vector<int>& word) {
  std::vector<std::vector<int>> out;
  int k = static_cast<int>(word.size());
  std::vector<int> v(k, 0);
  auto bump = [&]() {
    int p = k - 1;
    while (p >= 0 && v[p] == gen.gen_sizes[word[p]] - 1) v[p--] = 0;
    if (p < 0) return false;
    ++v[p];
    return true;
  };
  for (int x : word)
    if (gen.gen_sizes[x] == 0) return out;
  while (true) {
    bool chained = true;
    for (int j = 0; j + 1 < k; ++j)
      if (gen.rho[word[j]][v[j]] != gen.lambda[word[j + 1]][v[j + 1]]) {
        chained = false;
        break;
      }
    if (chained) out.push_back(v);
    if (!bump()) break;
  }
  return out;
}

inline long long product_order_formula(int h_order,
                                       const std::vector<int>& sizes) {
  long long total = 0;
  for (int k : sizes) {
    long long p = 1;
    for (int i = 0; i < k; ++i) p *= h_order;
    total += p;
  }
  return total;
}

}  // namespace oracle
