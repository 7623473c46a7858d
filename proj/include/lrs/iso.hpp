#pragma once

// Isomorphism search and the division preorder on finite semigroups.
//
// Both are exhaustive backtracking searches meant for desk-scale inputs;
// caps guard against runaway instances and both results re-verify before
// being returned.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "lrs/semigroup.hpp"

namespace lrs {

/// Lexicographically least isomorphism S -> T as an image array, or absent.
/// Pruned by identity presence, idempotence and the (index, period) profile
/// of each element; orders above `order_cap` raise OrderCapExceeded.
inline std::optional<std::vector<int>> find_isomorphism(
    const FiniteSemigroup& s, const FiniteSemigroup& t, int order_cap = 16) {
  if (s.order != t.order) return std::nullopt;
  int n = s.order;
  if (n > order_cap)
    throw OrderCapExceeded("isomorphism search capped at order " +
                           std::to_string(order_cap));
  if (identity_of(s).has_value() != identity_of(t).has_value())
    return std::nullopt;

  using Profile = std::pair<int, int>;
  std::vector<Profile> ps(n), pt(n);
  for (int a = 0; a < n; ++a) {
    ps[a] = element_order_profile(s, a);
    pt[a] = element_order_profile(t, a);
  }
  {
    auto ms = ps, mt = pt;
    std::sort(ms.begin(), ms.end());
    std::sort(mt.begin(), mt.end());
    if (ms != mt) return std::nullopt;
  }

  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> assign = [&](int a) -> bool {
    if (a == n) return true;
    for (int v = 0; v < n; ++v) {
      if (used[v] || ps[a] != pt[v]) continue;
      image[a] = v;
      used[v] = true;
      // Every instance m(x*y) = m(x)*m(y) whose three elements are now all
      // assigned and involve a: a as a factor, then a as a product.
      bool ok = true;
      for (int b = 0; b <= a && ok; ++b) {
        int p = s.at(a, b);
        if (image[p] != -1 && image[p] != t.at(v, image[b])) ok = false;
        int q = s.at(b, a);
        if (ok && image[q] != -1 && image[q] != t.at(image[b], v)) ok = false;
      }
      for (int b = 0; b < a && ok; ++b)
        for (int c = 0; c < a && ok; ++c)
          if (s.at(b, c) == a && t.at(image[b], image[c]) != v) ok = false;
      if (ok && assign(a + 1)) return true;
      image[a] = -1;
      used[v] = false;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;

  Homomorphism h{s, t, image};
  if (!is_homomorphism(h) || !is_injective(h))
    throw Error("isomorphism failed re-verification");
  return image;
}

struct DivisionWitness {
  std::vector<int> subset;  // subsemigroup of S, ids in S
  Homomorphism onto;        // subsemigroup(S, subset) ->> T
};

struct DivisionCaps {
  int max_s = 64;
  int max_t = 8;
  long long max_subsemigroups = 200000;
};

namespace detail {

inline std::vector<int> closure(const FiniteSemigroup& s,
                                std::vector<int> gens) {
  std::set<int> seen(gens.begin(), gens.end());
  std::vector<int> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (int y : std::vector<int>(seen.begin(), seen.end())) {
      for (int p : {s.at(x, y), s.at(y, x)})
        if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return {seen.begin(), seen.end()};
}

/// Every subsemigroup of S, each as a sorted id vector.  Grown by closing
/// singletons and then extending known subsemigroups one element at a time;
/// any subsemigroup is reached by following one of its generating chains.
inline std::vector<std::vector<int>> all_subsemigroups(
    const FiniteSemigroup& s, long long cap) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  auto add = [&](std::vector<int> u) {
    if (seen.insert(u).second) {
      queue.push_back(std::move(u));
      if (static_cast<long long>(seen.size()) > cap)
        throw CapExceeded("subsemigroup enumeration exceeds cap");
    }
  };
  for (int x = 0; x < s.order; ++x) add(closure(s, {x}));
  for (size_t q = 0; q < queue.size(); ++q) {
    auto u = queue[q];
    for (int x = 0; x < s.order; ++x) {
      if (std::binary_search(u.begin(), u.end(), x)) continue;
      auto v = u;
      v.push_back(x);
      add(closure(s, std::move(v)));
    }
  }
  std::vector<std::vector<int>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

inline std::optional<std::vector<int>> surjection_onto(
    const FiniteSemigroup& u, const FiniteSemigroup& t) {
  int n = u.order, m = t.order;
  if (n < m) return std::nullopt;
  std::vector<int> image(n, -1);
  std::vector<int> hits(m, 0);
  int covered = 0;
  std::function<bool(int)> assign = [&](int a) -> bool {
    if (a == n) return covered == m;
    if (m - covered > n - a) return false;
    for (int v = 0; v < m; ++v) {
      bool ok = true;
      for (int b = 0; b <= a && ok; ++b) {
        if (image[b] == -1 && b != a) continue;
        int ib = (b == a) ? v : image[b];
        int p = u.at(a, b);
        if (p <= a) {
          int ip = (p == a) ? v : image[p];
          if (ip != t.at(v, ib)) ok = false;
        }
        int q = u.at(b, a);
        if (ok && q <= a) {
          int iq = (q == a) ? v : image[q];
          if (iq != t.at(ib, v)) ok = false;
        }
      }
      if (!ok) continue;
      image[a] = v;
      if (hits[v]++ == 0) ++covered;
      if (assign(a + 1)) return true;
      image[a] = -1;
      if (--hits[v] == 0) --covered;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return image;
}

}  // namespace detail

/// Does T divide S, i.e. is T a homomorphic image of a subsemigroup of S?
/// Returns the least witness under (subsemigroup size, subset, map) order.
inline std::optional<DivisionWitness> divides(const FiniteSemigroup& t,
                                              const FiniteSemigroup& s,
                                              DivisionCaps caps = {}) {
  if (s.order > caps.max_s)
    throw CapExceeded("divides: |S| exceeds cap " + std::to_string(caps.max_s));
  if (t.order > caps.max_t)
    throw CapExceeded("divides: |T| exceeds cap " + std::to_string(caps.max_t));
  for (const auto& subset :
       detail::all_subsemigroups(s, caps.max_subsemigroups)) {
    if (static_cast<int>(subset.size()) < t.order) continue;
    FiniteSemigroup u = subsemigroup(s, subset);
    if (auto image = detail::surjection_onto(u, t)) {
      Homomorphism h{u, t, *image};
      if (!is_homomorphism(h) || !is_surjective(h))
        throw Error("division witness failed re-verification");
      return DivisionWitness{subset, std::move(h)};
    }
  }
  return std::nullopt;
}

}  // namespace lrs
