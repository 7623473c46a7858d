#pragma once

// Finite semigroups as explicit Cayley tables, plus the constructions the
// rest of the library leans on: congruences and quotients, homomorphisms,
// direct products, unit adjunction, Rees-truncated free semigroups and a
// small zoo of named semigroups.
//
// Everything is value-semantic and immutable after construction.  Element
// ids are 0-based ints; labels are presentation-only and never affect
// semantics (equality compares order and table, nothing else).

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lrs {

using Table = std::vector<std::vector<int>>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfRange : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct OrderCapExceeded : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct Malformed : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct Mismatch : Error { using Error::Error; };

/// First violating triple (a,b,c) in lexicographic scan order:
/// (a*b)*c != a*(b*c).
struct NotAssociative : Error {
  int a, b, c;
  NotAssociative(int a_, int b_, int c_)
      : Error("not associative at (" + std::to_string(a_) + "," +
              std::to_string(b_) + "," + std::to_string(c_) + ")"),
        a(a_), b(b_), c(c_) {}
};

/// Partition incompatible with multiplication: a ~ a2, b ~ b2, yet a*b and
/// a2*b2 fall into different classes.
struct NotCompatible : Error {
  int a, a2, b, b2;
  NotCompatible(int a_, int a2_, int b_, int b2_)
      : Error("partition not compatible: (" + std::to_string(a_) + "~" +
              std::to_string(a2_) + ")*(" + std::to_string(b_) + "~" +
              std::to_string(b2_) + ") splits"),
        a(a_), a2(a2_), b(b_), b2(b2_) {}
};

struct FiniteSemigroup {
  int order = 0;
  Table table;
  std::vector<std::string> labels;  // optional, size 0 or order

  int at(int a, int b) const { return table[a][b]; }

  std::string label(int a) const {
    return labels.empty() ? std::to_string(a) : labels[a];
  }

  friend bool operator==(const FiniteSemigroup& x, const FiniteSemigroup& y) {
    return x.order == y.order && x.table == y.table;
  }
};

/// Lexicographically least (a,b,c) with (a*b)*c != a*(b*c), if any.
inline std::optional<std::array<int, 3>> associativity_witness(
    const Table& table) {
  int n = static_cast<int>(table.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          return std::array<int, 3>{a, b, c};
  return std::nullopt;
}

inline FiniteSemigroup from_table(Table table,
                                  std::vector<std::string> labels = {}) {
  int n = static_cast<int>(table.size());
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      throw Malformed("table row " + std::to_string(a) + " has wrong length");
    for (int b = 0; b < n; ++b)
      if (table[a][b] < 0 || table[a][b] >= n)
        throw OutOfRange("table entry (" + std::to_string(a) + "," +
                         std::to_string(b) + ") = " +
                         std::to_string(table[a][b]) + " outside [0," +
                         std::to_string(n) + ")");
  }
  if (auto w = associativity_witness(table))
    throw NotAssociative((*w)[0], (*w)[1], (*w)[2]);
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw Malformed("labels size does not match order");
  return FiniteSemigroup{n, std::move(table), std::move(labels)};
}

/// The two-sided identity if present (it is unique when it exists).
inline std::optional<int> identity_of(const FiniteSemigroup& s) {
  for (int e = 0; e < s.order; ++e) {
    bool ok = true;
    for (int a = 0; a < s.order && ok; ++a)
      ok = s.at(e, a) == a && s.at(a, e) == a;
    if (ok) return e;
  }
  return std::nullopt;
}

inline bool is_idempotent(const FiniteSemigroup& s, int a) {
  return s.at(a, a) == a;
}

inline std::vector<int> idempotents(const FiniteSemigroup& s) {
  std::vector<int> out;
  for (int a = 0; a < s.order; ++a)
    if (is_idempotent(s, a)) out.push_back(a);
  return out;
}

inline bool is_commutative(const FiniteSemigroup& s) {
  for (int a = 0; a < s.order; ++a)
    for (int b = a + 1; b < s.order; ++b)
      if (s.at(a, b) != s.at(b, a)) return false;
  return true;
}

/// Group test by brute force: two-sided identity plus two-sided inverses.
inline bool is_group(const FiniteSemigroup& s) {
  auto e = identity_of(s);
  if (!e) return false;
  for (int a = 0; a < s.order; ++a) {
    bool inv = false;
    for (int b = 0; b < s.order && !inv; ++b)
      inv = s.at(a, b) == *e && s.at(b, a) == *e;
    if (!inv) return false;
  }
  return true;
}

/// (index, period) of the cyclic subsemigroup generated by a: the powers
/// a, a^2, ... enter a cycle of length `period` after `index - 1` steps.
inline std::pair<int, int> element_order_profile(const FiniteSemigroup& s,
                                                 int a) {
  std::vector<int> seen_at(s.order, -1);
  int x = a, pos = 1;
  while (seen_at[x] == -1) {
    seen_at[x] = pos;
    x = s.at(x, a);
    ++pos;
  }
  int index = seen_at[x];
  int period = pos - seen_at[x];
  return {index, period};
}

// ---------------------------------------------------------------------------
// Congruences, homomorphisms, quotients

struct Congruence {
  int parent_order = 0;
  std::vector<int> class_of;               // element id -> class id
  std::vector<std::vector<int>> classes;   // sorted members per class
};

struct Homomorphism {
  FiniteSemigroup source;
  FiniteSemigroup target;
  std::vector<int> map;  // source id -> target id
};

inline bool is_homomorphism(const Homomorphism& h) {
  if (static_cast<int>(h.map.size()) != h.source.order) return false;
  for (int v : h.map)
    if (v < 0 || v >= h.target.order) return false;
  for (int a = 0; a < h.source.order; ++a)
    for (int b = 0; b < h.source.order; ++b)
      if (h.map[h.source.at(a, b)] != h.target.at(h.map[a], h.map[b]))
        return false;
  return true;
}

inline bool is_surjective(const Homomorphism& h) {
  std::vector<bool> hit(h.target.order, false);
  for (int v : h.map) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

inline bool is_injective(const Homomorphism& h) {
  std::set<int> vals(h.map.begin(), h.map.end());
  return static_cast<int>(vals.size()) == h.source.order;
}

/// Classes are reordered by smallest member; members sorted ascending.
/// Compatibility check: merging a ~ a2 must not split any translate.
inline Congruence congruence_from_partition(
    const FiniteSemigroup& s, std::vector<std::vector<int>> classes) {
  std::vector<int> class_of(s.order, -1);
  for (auto& cl : classes) {
    if (cl.empty()) throw Malformed("empty partition class");
    std::sort(cl.begin(), cl.end());
    for (int x : cl) {
      if (x < 0 || x >= s.order)
        throw OutOfRange("partition member " + std::to_string(x));
      if (class_of[x] != -1)
        throw Malformed("element " + std::to_string(x) +
                        " appears in two classes");
      class_of[x] = 1;  // mark, real ids assigned after reorder
    }
  }
  for (int x = 0; x < s.order; ++x)
    if (class_of[x] == -1)
      throw Malformed("element " + std::to_string(x) + " not covered");

  std::sort(classes.begin(), classes.end(),
            [](const auto& x, const auto& y) { return x[0] < y[0]; });
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    for (int x : classes[c]) class_of[x] = c;

  for (const auto& cl : classes)
    for (int a : cl)
      for (int a2 : cl)
        for (int b = 0; b < s.order; ++b) {
          if (class_of[s.at(a, b)] != class_of[s.at(a2, b)])
            throw NotCompatible(a, a2, b, b);
          if (class_of[s.at(b, a)] != class_of[s.at(b, a2)])
            throw NotCompatible(b, b, a, a2);
        }
  // Pairwise products stay joined: a~a2, b~b2 => ab ~ a2b2, by the two
  // one-sided checks above (ab ~ a2b ~ a2b2).
  return Congruence{s.order, std::move(class_of), std::move(classes)};
}

inline std::string set_label(const FiniteSemigroup& s,
                             const std::vector<int>& members) {
  std::string out = "{";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += s.label(members[i]);
  }
  return out + "}";
}

/// Quotient semigroup plus the canonical surjection (re-verified).
inline std::pair<FiniteSemigroup, Homomorphism> quotient(
    const FiniteSemigroup& s, const Congruence& c) {
  if (c.parent_order != s.order) throw Mismatch("congruence/semigroup order");
  int m = static_cast<int>(c.classes.size());
  Table t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      t[i][j] = c.class_of[s.at(c.classes[i][0], c.classes[j][0])];
    labels[i] = set_label(s, c.classes[i]);
  }
  FiniteSemigroup q = from_table(std::move(t), std::move(labels));
  Homomorphism h{s, q, c.class_of};
  if (!is_homomorphism(h) || !is_surjective(h))
    throw Error("quotient surjection failed re-verification");
  return {q, h};
}

// ---------------------------------------------------------------------------
// Constructions

inline FiniteSemigroup trivial_semigroup() {
  return from_table({{0}}, {"e"});
}

inline FiniteSemigroup cyclic(int n) {
  if (n < 1) throw OutOfRange("cyclic order must be positive");
  Table t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return from_table(std::move(t), std::move(labels));
}

inline FiniteSemigroup left_zero(int n) {
  if (n < 1) throw OutOfRange("left_zero order must be positive");
  Table t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = "l" + std::to_string(a);
    for (int b = 0; b < n; ++b) t[a][b] = a;
  }
  return from_table(std::move(t), std::move(labels));
}

/// Two-element join semilattice {0,1} with a v b = max(a,b).
inline FiniteSemigroup semilattice2() {
  return from_table({{0, 1}, {1, 1}}, {"0", "1"});
}

/// Identity e plus two left zeros p, q (pq = p, qp = q).
inline FiniteSemigroup flip_flop_left() {
  return from_table({{0, 1, 2}, {1, 1, 1}, {2, 2, 2}}, {"e", "p", "q"});
}

/// All maps [n] -> [n] under left-to-right composition (f*g)(x) = g(f(x)).
inline FiniteSemigroup full_transformations(int n) {
  if (n < 1) throw OutOfRange("full_transformations needs n >= 1");
  if (n > 3) throw OrderCapExceeded("full_transformations capped at n <= 3");
  int m = 1;
  for (int i = 0; i < n; ++i) m *= n;
  auto image = [&](int f, int x) {  // f encoded little-endian base n
    for (int i = 0; i < x; ++i) f /= n;
    return f % n;
  };
  auto encode = [&](const std::vector<int>& img) {
    int f = 0;
    for (int i = n - 1; i >= 0; --i) f = f * n + img[i];
    return f;
  };
  Table t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int f = 0; f < m; ++f) {
    std::string lab;
    for (int x = 0; x < n; ++x) lab += std::to_string(image(f, x));
    labels[f] = lab;
    for (int g = 0; g < m; ++g) {
      std::vector<int> img(n);
      for (int x = 0; x < n; ++x) img[x] = image(g, image(f, x));
      t[f][g] = encode(img);
    }
  }
  return from_table(std::move(t), std::move(labels));
}

inline FiniteSemigroup named_semigroup(const std::string& name, int param = 0) {
  if (name == "trivial") return trivial_semigroup();
  if (name == "cyclic") return cyclic(param);
  if (name == "left_zero") return left_zero(param);
  if (name == "semilattice2") return semilattice2();
  if (name == "flip_flop_left") return flip_flop_left();
  if (name == "full_transformations") return full_transformations(param);
  throw UnknownName("no semigroup named '" + name + "'");
}

/// Adjoin a fresh two-sided identity as the last element, id n, even if S
/// already has one.  Keeping old ids stable makes subsystem recovery exact.
inline FiniteSemigroup adjoin_unit(const FiniteSemigroup& s) {
  int n = s.order;
  Table t(n + 1, std::vector<int>(n + 1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = s.at(a, b);
  for (int a = 0; a <= n; ++a) {
    t[a][n] = a;
    t[n][a] = a;
  }
  std::vector<std::string> labels;
  if (!s.labels.empty()) {
    labels = s.labels;
    bool taken = std::find(labels.begin(), labels.end(), "1") != labels.end();
    labels.push_back(taken ? "unit" : "1");
  }
  return from_table(std::move(t), std::move(labels));
}

inline FiniteSemigroup direct_product(const FiniteSemigroup& s,
                                      const FiniteSemigroup& t,
                                      long long cap = 4096) {
  long long n = static_cast<long long>(s.order) * t.order;
  if (n > cap) throw CapExceeded("direct product order exceeds cap");
  Table tab(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  auto id = [&](int a, int x) { return a * t.order + x; };
  for (int a = 0; a < s.order; ++a)
    for (int x = 0; x < t.order; ++x) {
      labels[id(a, x)] = "(" + s.label(a) + "," + t.label(x) + ")";
      for (int b = 0; b < s.order; ++b)
        for (int y = 0; y < t.order; ++y)
          tab[id(a, x)][id(b, y)] = id(s.at(a, b), t.at(x, y));
    }
  return from_table(std::move(tab), std::move(labels));
}

/// Words of length 1..max_len over `generators` letters, plus an absorbing
/// zero θ as the last element.  Products run by concatenation and fall to θ
/// once the length bound is passed.
inline FiniteSemigroup rees_truncated_free(int generators, int max_len,
                                           long long cap = 4096,
                                           long long assoc_recheck_cap = 512) {
  if (generators < 1 || max_len < 1)
    throw OutOfRange("rees_truncated_free needs generators, max_len >= 1");
  std::vector<std::vector<int>> words;
  std::vector<std::vector<int>> frontier{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (int g = 0; g < generators; ++g) {
        auto w2 = w;
        w2.push_back(g);
        next.push_back(w2);
        words.push_back(w2);
        if (static_cast<long long>(words.size()) + 1 > cap)
          throw CapExceeded("rees_truncated_free order exceeds cap");
      }
    frontier = std::move(next);
  }
  std::sort(words.begin(), words.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  int n = static_cast<int>(words.size()) + 1;
  int theta = n - 1;
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n - 1; ++i) index[words[i]] = i;

  auto letter = [&](int g) -> std::string {
    if (generators <= 26) return std::string(1, static_cast<char>('a' + g));
    return "x" + std::to_string(g);
  };
  std::vector<std::string> labels(n);
  for (int i = 0; i < n - 1; ++i) {
    std::string lab;
    for (size_t j = 0; j < words[i].size(); ++j) {
      if (j && generators > 26) lab += ".";
      lab += letter(words[i][j]);
    }
    labels[i] = lab;
  }
  labels[theta] = "θ";

  Table t(n, std::vector<int>(n, theta));
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j)
      if (static_cast<int>(words[i].size() + words[j].size()) <= max_len) {
        auto w = words[i];
        w.insert(w.end(), words[j].begin(), words[j].end());
        t[i][j] = index.at(w);
      }
  // Associativity holds by construction (both association orders of a
  // triple concatenate to the same word, or both truncate to the zero);
  // the brute-force recheck is only worth its cubic cost on small orders.
  if (n <= assoc_recheck_cap)
    return from_table(std::move(t), std::move(labels));
  return FiniteSemigroup{n, std::move(t), std::move(labels)};
}

/// The sub-Cayley-table on a closed subset (ids reindexed by position).
inline FiniteSemigroup subsemigroup(const FiniteSemigroup& s,
                                    std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  int m = static_cast<int>(subset.size());
  std::vector<int> pos(s.order, -1);
  for (int i = 0; i < m; ++i) {
    if (subset[i] < 0 || subset[i] >= s.order)
      throw OutOfRange("subset member " + std::to_string(subset[i]));
    pos[subset[i]] = i;
  }
  Table t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = s.label(subset[i]);
    for (int j = 0; j < m; ++j) {
      int p = s.at(subset[i], subset[j]);
      if (pos[p] == -1)
        throw NotClosed("subset not closed: " + std::to_string(subset[i]) +
                        "*" + std::to_string(subset[j]) + " = " +
                        std::to_string(p));
      t[i][j] = pos[p];
    }
  }
  return from_table(std::move(t), std::move(labels));
}

}  // namespace lrs
