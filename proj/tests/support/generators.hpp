#pragma once

// Seeded random generation of small skeletons and systems for the
// property-style tests.  Valid systems come from randomized backtracking
// over the pair maps with incremental axiom checking; if the search budget
// runs out the all-zero maps are used (always coherent once the zero-size
// positions form an ideal).  Invalid candidates come from rejection
// sampling.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "lrs/lr_system.hpp"
#include "lrs/semigroup.hpp"

namespace testgen {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

inline const std::vector<lrs::FiniteSemigroup>& skeleton_pool() {
  static const std::vector<lrs::FiniteSemigroup> pool = {
      lrs::trivial_semigroup(), lrs::cyclic(2),       lrs::cyclic(3),
      lrs::left_zero(2),        lrs::semilattice2(),  lrs::flip_flop_left()};
  return pool;
}

inline std::vector<std::vector<int>> two_sided_ideals(
    const lrs::FiniteSemigroup& s) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << s.order); ++mask) {
    bool ideal = true;
    for (int x = 0; x < s.order && ideal; ++x) {
      if (!((mask >> x) & 1)) continue;
      for (int y = 0; y < s.order && ideal; ++y)
        if (!((mask >> s.table[x][y]) & 1) || !((mask >> s.table[y][x]) & 1))
          ideal = false;
    }
    if (!ideal) continue;
    std::vector<int> j;
    for (int i = 0; i < s.order; ++i)
      if ((mask >> i) & 1) j.push_back(i);
    out.push_back(std::move(j));
  }
  return out;
}

namespace detail {

inline std::vector<int> decode_map(long long rank, int len, int range) {
  std::vector<int> m(len);
  for (int i = 0; i < len; ++i) {
    m[i] = static_cast<int>(rank % range);
    rank /= range;
  }
  return m;
}

// Axiom instances for one triple, over partially assigned maps.
inline bool triple_holds(const lrs::LrSystem& sys, int a, int b, int c) {
  const auto& sk = sys.skeleton;
  int ab = sk.at(a, b), bc = sk.at(b, c), abc = sk.at(ab, c);
  for (int i = 0; i < sys.index_sizes[abc]; ++i) {
    if (sys.lambda[a][b][sys.lambda[ab][c][i]] != sys.lambda[a][bc][i])
      return false;
    if (sys.rho[b][c][sys.rho[a][bc][i]] != sys.rho[ab][c][i]) return false;
    if (sys.rho[a][b][sys.lambda[ab][c][i]] != sys.lambda[b][c][sys.rho[a][bc][i]])
      return false;
  }
  return true;
}

inline bool fill_maps(lrs::LrSystem& sys, std::vector<std::vector<bool>>& set,
                      const std::vector<std::pair<int, int>>& order,
                      size_t at, Rng& rng, long long& budget) {
  if (at == order.size()) return true;
  auto [a, b] = order[at];
  const auto& sk = sys.skeleton;
  int kab = sys.index_sizes[sk.at(a, b)];
  int ka = sys.index_sizes[a], kb = sys.index_sizes[b];
  long long lam_count = 1, rho_count = 1;
  for (int i = 0; i < kab; ++i) {
    lam_count *= ka;
    rho_count *= kb;
  }
  std::vector<long long> ranks(lam_count * rho_count);
  std::iota(ranks.begin(), ranks.end(), 0);
  std::shuffle(ranks.begin(), ranks.end(), rng);

  for (long long r : ranks) {
    if (--budget < 0) return false;
    sys.lambda[a][b] = decode_map(r % lam_count, kab, ka);
    sys.rho[a][b] = decode_map(r / lam_count, kab, kb);
    set[a][b] = true;
    bool consistent = true;
    int n = sk.order;
    for (int x = 0; x < n && consistent; ++x)
      for (int y = 0; y < n && consistent; ++y)
        for (int z = 0; z < n && consistent; ++z) {
          bool ready = set[x][y] && set[y][z] && set[sk.at(x, y)][z] &&
                       set[x][sk.at(y, z)];
          if (ready && !triple_holds(sys, x, y, z)) consistent = false;
        }
    if (consistent && fill_maps(sys, set, order, at + 1, rng, budget))
      return true;
    set[a][b] = false;
  }
  return false;
}

}  // namespace detail

/// A valid system on the given skeleton with the given index sizes (zero
/// positions must already form a two-sided ideal).  Backtracking with a
/// step budget; the all-zero assignment is the fallback.
inline lrs::LrSystem random_valid_system(Rng& rng,
                                         const lrs::FiniteSemigroup& skeleton,
                                         std::vector<int> sizes,
                                         long long budget = 20000) {
  int n = skeleton.order;
  lrs::LrSystem sys;
  sys.skeleton = skeleton;
  sys.index_sizes = std::move(sizes);
  sys.lambda.assign(n, std::vector<lrs::IndexMap>(n));
  sys.rho.assign(n, std::vector<lrs::IndexMap>(n));

  std::vector<std::pair<int, int>> order;
  std::vector<std::vector<bool>> set(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int kab = sys.index_sizes[skeleton.at(a, b)];
      if (kab == 0) {
        set[a][b] = true;  // empty maps, nothing to choose
      } else {
        order.emplace_back(a, b);
      }
    }
  std::shuffle(order.begin(), order.end(), rng);

  if (!detail::fill_maps(sys, set, order, 0, rng, budget)) {
    for (auto [a, b] : order) {
      int kab = sys.index_sizes[skeleton.at(a, b)];
      sys.lambda[a][b].assign(kab, 0);
      sys.rho[a][b].assign(kab, 0);
    }
  }
  return lrs::make_system(sys);
}

/// Random sizes for a skeleton: zero on a randomly chosen two-sided ideal
/// (usually the empty one), 1..max_index elsewhere.
inline std::vector<int> random_sizes(Rng& rng,
                                     const lrs::FiniteSemigroup& skeleton,
                                     int max_index, bool force_empty) {
  auto ideals = two_sided_ideals(skeleton);
  std::vector<int> j;
  if (force_empty) {
    std::vector<std::vector<int>> nonempty;
    for (auto& c : ideals)
      if (!c.empty()) nonempty.push_back(c);
    j = nonempty[pick(rng, static_cast<int>(nonempty.size()))];
  } else if (pick(rng, 5) == 0) {
    j = ideals[pick(rng, static_cast<int>(ideals.size()))];
  }
  std::vector<int> sizes(skeleton.order);
  for (int a = 0; a < skeleton.order; ++a) sizes[a] = 1 + pick(rng, max_index);
  for (int a : j) sizes[a] = 0;
  return sizes;
}

inline lrs::LrSystem random_pool_system(Rng& rng, int max_index = 3,
                                        bool force_empty = false) {
  const auto& pool = skeleton_pool();
  const auto& skeleton = pool[pick(rng, static_cast<int>(pool.size()))];
  return random_valid_system(rng, skeleton,
                             random_sizes(rng, skeleton, max_index, force_empty));
}

/// An arity-consistent candidate with at least one axiom violation, by
/// rejection.  All index sets nonempty so the violation is realizable.
inline lrs::LrSystem random_invalid_candidate(Rng& rng, int max_index = 3) {
  const auto& pool = skeleton_pool();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const auto& skeleton = pool[pick(rng, static_cast<int>(pool.size()))];
    int n = skeleton.order;
    lrs::LrSystem cand;
    cand.skeleton = skeleton;
    cand.index_sizes.resize(n);
    for (int a = 0; a < n; ++a) cand.index_sizes[a] = 1 + pick(rng, max_index);
    if (*std::max_element(cand.index_sizes.begin(), cand.index_sizes.end()) < 2)
      cand.index_sizes[pick(rng, n)] = 2;
    cand.lambda.assign(n, std::vector<lrs::IndexMap>(n));
    cand.rho.assign(n, std::vector<lrs::IndexMap>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int kab = cand.index_sizes[skeleton.at(a, b)];
        cand.lambda[a][b].resize(kab);
        cand.rho[a][b].resize(kab);
        for (int i = 0; i < kab; ++i) {
          cand.lambda[a][b][i] = pick(rng, cand.index_sizes[a]);
          cand.rho[a][b][i] = pick(rng, cand.index_sizes[b]);
        }
      }
    if (!lrs::check_axioms(cand).empty()) return cand;
  }
  throw lrs::Error("failed to generate an invalid candidate");
}

inline lrs::LrSystem random_unital_system(Rng& rng, int max_index = 2) {
  return lrs::unital_extension(random_pool_system(rng, max_index));
}

}  // namespace testgen
