#pragma once

// The lambda-rho product of a finite semigroup H along a system over S:
// the carrier is the disjoint union of the powers H^{I[a]} for a in S, and
//
//     (x, a) * (y, b)  =  ( i |-> x(lambda[a,b](i)) . y(rho[a,b](i)),  ab )
//
// with i ranging over I[ab].  The product is associative for every H
// exactly when the system satisfies (alpha), (beta), (gamma); this header
// also provides the machinery used to exhibit both directions concretely:
// an explicit nonassociativity witness for broken systems, an independent
// set-based associativity check, the group-preservation predicate, and the
// wreath products that arise as special cases.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lrs/lr_system.hpp"
#include "lrs/semigroup.hpp"

namespace lrs {

struct ProductElement {
  int skel;                // element of the skeleton
  std::vector<int> tuple;  // function I[skel] -> H, as values

  friend bool operator==(const ProductElement& x, const ProductElement& y) {
    return x.skel == y.skel && x.tuple == y.tuple;
  }
};

inline ProductElement multiply(const FiniteSemigroup& base,
                               const LrSystem& sys, const ProductElement& x,
                               const ProductElement& y) {
  if (static_cast<int>(x.tuple.size()) != sys.index_sizes[x.skel] ||
      static_cast<int>(y.tuple.size()) != sys.index_sizes[y.skel])
    throw ArityMismatch("tuple length does not match index size");
  int ab = sys.skeleton.at(x.skel, y.skel);
  const IndexMap& lam = sys.lambda[x.skel][y.skel];
  const IndexMap& rho = sys.rho[x.skel][y.skel];
  ProductElement out{ab, std::vector<int>(sys.index_sizes[ab])};
  for (int i = 0; i < sys.index_sizes[ab]; ++i)
    out.tuple[i] = base.at(x.tuple[lam[i]], y.tuple[rho[i]]);
  return out;
}

inline long long product_order(const FiniteSemigroup& base,
                               const LrSystem& sys, long long cap) {
  long long total = 0;
  for (int k : sys.index_sizes) {
    long long pw = 1;
    for (int i = 0; i < k; ++i) {
      pw *= base.order;
      if (pw > cap) return cap + 1;
    }
    total += pw;
    if (total > cap) return cap + 1;
  }
  return total;
}

/// Fully enumerated product.  Element ids run skeleton-major; within one
/// skeleton element, tuples are ordered by rank sum(x_i * |H|^i).
struct ProductSemigroup {
  FiniteSemigroup semigroup;
  FiniteSemigroup base;
  LrSystem system;
  std::vector<ProductElement> elements;
  std::vector<int> offsets;  // offsets[a] = id of (a, all-zero tuple)

  int skeleton_of(int id) const { return elements[id].skel; }

  int id_of(const ProductElement& e) const {
    if (static_cast<int>(e.tuple.size()) != system.index_sizes[e.skel])
      throw ArityMismatch("tuple length does not match index size");
    long long rank = 0, pw = 1;
    for (int v : e.tuple) {
      if (v < 0 || v >= base.order) throw OutOfRange("tuple value outside H");
      rank += v * pw;
      pw *= base.order;
    }
    return offsets[e.skel] + static_cast<int>(rank);
  }
};

/// Builds the full Cayley table.  Orders up to `assoc_recheck_cap` are
/// re-validated brute force, so an invalid system surfaces as
/// NotAssociative rather than a silently broken table.
inline ProductSemigroup build_product(const FiniteSemigroup& base,
                                      const LrSystem& sys,
                                      long long cap = 4096,
                                      long long assoc_recheck_cap = 512) {
  check_arities(sys);
  long long total = product_order(base, sys, cap);
  if (total > cap)
    throw CapExceeded("product order exceeds cap " + std::to_string(cap));
  int n = static_cast<int>(total);

  ProductSemigroup out;
  out.base = base;
  out.system = sys;
  out.offsets.assign(sys.skeleton.order, 0);
  out.elements.reserve(n);
  for (int a = 0; a < sys.skeleton.order; ++a) {
    out.offsets[a] = static_cast<int>(out.elements.size());
    int k = sys.index_sizes[a];
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= base.order;
    for (long long r = 0; r < count; ++r) {
      ProductElement e{a, std::vector<int>(k)};
      long long rest = r;
      for (int i = 0; i < k; ++i) {
        e.tuple[i] = static_cast<int>(rest % base.order);
        rest /= base.order;
      }
      out.elements.push_back(std::move(e));
    }
  }

  // Compact digit labels when every tuple fits and no two elements clash;
  // otherwise "skeletonlabel:[v0,v1,...]".
  std::vector<std::string> labels(n);
  bool compact_ok = base.order <= 10;
  if (compact_ok) {
    std::unordered_set<std::string> seen;
    for (int id = 0; id < n && compact_ok; ++id) {
      std::string s;
      for (int v : out.elements[id].tuple) s += static_cast<char>('0' + v);
      if (s.empty() || !seen.insert(s).second) compact_ok = false;
      labels[id] = std::move(s);
    }
  }
  if (!compact_ok) {
    std::unordered_set<std::string> seen;
    bool unique = true;
    for (int id = 0; id < n; ++id) {
      const ProductElement& e = out.elements[id];
      std::string s = sys.skeleton.label(e.skel) + ":[";
      for (size_t i = 0; i < e.tuple.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e.tuple[i]);
      }
      s += ']';
      if (!seen.insert(s).second) unique = false;
      labels[id] = std::move(s);
    }
    if (!unique)
      for (int id = 0; id < n; ++id)
        labels[id] = std::to_string(id) + "#" + labels[id];
  }

  Table table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[i][j] = out.id_of(multiply(base, sys, out.elements[i],
                                       out.elements[j]));
  if (n <= assoc_recheck_cap) {
    out.semigroup = from_table(std::move(table), std::move(labels));
  } else {
    out.semigroup = FiniteSemigroup{n, std::move(table), std::move(labels)};
  }
  return out;
}

/// Identity of the product.  For a unital system over a base with an
/// identity this is the constant-identity tuple over I[1], re-verified
/// against the table; otherwise falls back to scanning the built table
/// for a two-sided identity, which may come up empty.
inline std::optional<ProductElement> unit_of_product(
    const FiniteSemigroup& base, const LrSystem& sys, long long cap = 4096) {
  ProductSemigroup p = build_product(base, sys, cap);
  UnitalReport rep = is_unital(sys);
  auto e = identity_of(base);
  if (rep.unital && e) {
    ProductElement unit{*rep.unit,
                        std::vector<int>(sys.index_sizes[*rep.unit], *e)};
    int id = p.id_of(unit);
    for (int x = 0; x < p.semigroup.order; ++x)
      if (p.semigroup.at(id, x) != x || p.semigroup.at(x, id) != x)
        throw Mismatch("constructed unit fails to be a two-sided identity");
    return unit;
  }
  auto found = identity_of(p.semigroup);
  if (!found) return std::nullopt;
  return p.elements[*found];
}

/// Map on products induced by an arrow t : S' -> S between systems:
/// (x, a) |-> (x o t[a], h(a)), running H^[target] -> H^[source].  The map
/// is always well defined; it is a homomorphism for every base exactly when
/// t satisfies the two commuting squares (validate_transformation).
inline Homomorphism induced_hom(const Transformation& t,
                                const ProductSemigroup& domain,
                                const ProductSemigroup& codomain) {
  if (!(domain.system == t.target) || !(codomain.system == t.source))
    throw Mismatch("products do not match transformation endpoints");
  if (!(domain.base == codomain.base))
    throw Mismatch("products are over different bases");
  int n = domain.semigroup.order;
  Homomorphism hom{domain.semigroup, codomain.semigroup,
                   std::vector<int>(n)};
  for (int id = 0; id < n; ++id) {
    const ProductElement& e = domain.elements[id];
    int ha = t.skeleton_hom[e.skel];
    ProductElement img{ha, std::vector<int>(t.source.index_sizes[ha])};
    for (size_t j = 0; j < img.tuple.size(); ++j)
      img.tuple[j] = e.tuple[t.index_maps[e.skel][j]];
    hom.map[id] = codomain.id_of(img);
  }
  return hom;
}

// ---------------------------------------------------------------------------
// Nonassociativity witness

struct NoViolationRecorded : Error { using Error::Error; };

struct NonassocWitness {
  AxiomViolation cause;    // first violation, scan order of check_axioms
  FiniteSemigroup base;    // truncated free semigroup with a zero
  ProductElement x, y, z;  // tuples of pairwise distinct generators
  ProductElement left;     // (x*y)*z, differs from right at cause.index
  ProductElement right;    // x*(y*z)
};

/// For an arity-valid system that fails an axiom, produce a base and three
/// concrete elements whose two association orders differ.  Generators are
/// assigned so that every letter of the compared words is distinct, hence
/// the words collide only if the index computations agree.
inline NonassocWitness nonassociativity_witness(const LrSystem& sys,
                                                long long base_cap = 65536) {
  check_arities(sys);
  auto violations = check_axioms(sys);
  if (violations.empty())
    throw NoViolationRecorded("system satisfies all axioms");
  const AxiomViolation& v = violations.front();
  int ka = sys.index_sizes[v.a];
  int kb = sys.index_sizes[v.b];
  int kc = sys.index_sizes[v.c];
  NonassocWitness w;
  w.cause = v;
  w.base = rees_truncated_free(ka + kb + kc, 3, base_cap);
  // Single letters are ids 0..g-1 in the truncated free semigroup.
  w.x = ProductElement{v.a, std::vector<int>(ka)};
  w.y = ProductElement{v.b, std::vector<int>(kb)};
  w.z = ProductElement{v.c, std::vector<int>(kc)};
  for (int i = 0; i < ka; ++i) w.x.tuple[i] = i;
  for (int i = 0; i < kb; ++i) w.y.tuple[i] = ka + i;
  for (int i = 0; i < kc; ++i) w.z.tuple[i] = ka + kb + i;
  w.left = multiply(w.base, sys, multiply(w.base, sys, w.x, w.y), w.z);
  w.right = multiply(w.base, sys, w.x, multiply(w.base, sys, w.y, w.z));
  if (w.left == w.right)
    throw Error("witness construction failed to separate the two orders");
  return w;
}

// ---------------------------------------------------------------------------
// Powerset reading of the product over a two-element base

struct SetElement {
  int skel;
  std::uint64_t mask;  // subset of I[skel], one bit per index

  friend bool operator==(const SetElement& x, const SetElement& y) {
    return x.skel == y.skel && x.mask == y.mask;
  }
};

struct PowersetCheck {
  bool agrees = true;
  long long elements = 0;
  long long pairs = 0;
  std::optional<std::array<SetElement, 2>> witness;
};

/// A two-element base turns each tuple in H^{I[a]} into a subset of I[a].
/// Under that reading the product is (U,a)(W,b) = (lam^-1(U) op rho^-1(W),
/// ab): pull both subsets back to I[ab] and combine them elementwise with
/// the base operation.  This recomputes every product along that set-level
/// path, with subsets as bitmasks and preimages taken wholesale, and
/// compares against multiply on characteristic tuples.
inline PowersetCheck powerset_product_check(const LrSystem& sys,
                                            const FiniteSemigroup& boolean_op,
                                            long long element_cap = 512) {
  check_arities(sys);
  if (boolean_op.order != 2)
    throw Malformed("powerset base must have exactly two elements");

  std::vector<SetElement> all;
  for (int a = 0; a < sys.skeleton.order; ++a) {
    int k = sys.index_sizes[a];
    if (k > 62) throw CapExceeded("index set too large for bitmask subsets");
    for (std::uint64_t m = 0; m < (1ull << k); ++m) {
      all.push_back({a, m});
      if (static_cast<long long>(all.size()) > element_cap)
        throw CapExceeded("powerset product exceeds element cap");
    }
  }

  auto preimage = [](const IndexMap& f, std::uint64_t set, int domain) {
    std::uint64_t out = 0;
    for (int i = 0; i < domain; ++i)
      if ((set >> f[i]) & 1) out |= 1ull << i;
    return out;
  };
  auto set_multiply = [&](const SetElement& u, const SetElement& w) {
    int ab = sys.skeleton.at(u.skel, w.skel);
    int k = sys.index_sizes[ab];
    std::uint64_t lu = preimage(sys.lambda[u.skel][w.skel], u.mask, k);
    std::uint64_t rw = preimage(sys.rho[u.skel][w.skel], w.mask, k);
    SetElement out{ab, 0};
    for (int i = 0; i < k; ++i) {
      int bit = boolean_op.at((lu >> i) & 1, (rw >> i) & 1);
      out.mask |= static_cast<std::uint64_t>(bit) << i;
    }
    return out;
  };
  auto as_tuple = [&](const SetElement& e) {
    ProductElement p{e.skel, std::vector<int>(sys.index_sizes[e.skel])};
    for (int i = 0; i < sys.index_sizes[e.skel]; ++i)
      p.tuple[i] = static_cast<int>((e.mask >> i) & 1);
    return p;
  };

  PowersetCheck result;
  result.elements = static_cast<long long>(all.size());
  for (const auto& u : all)
    for (const auto& w : all) {
      ++result.pairs;
      SetElement via_sets = set_multiply(u, w);
      ProductElement via_tuples =
          multiply(boolean_op, sys, as_tuple(u), as_tuple(w));
      if (!(as_tuple(via_sets) == via_tuples)) {
        result.agrees = false;
        result.witness = {u, w};
        return result;
      }
    }
  return result;
}

// ---------------------------------------------------------------------------
// Group preservation

struct GroupPreservation {
  bool base_is_group = false;
  bool skeleton_is_group = false;
  bool system_unital = false;
  bool predicted = false;  // base group, skeleton group, and |H|<=1 or unital
  bool actual = false;     // brute-force check of the built product
  bool matches = false;
};

inline GroupPreservation group_preservation_check(const FiniteSemigroup& base,
                                                  const LrSystem& sys,
                                                  long long cap = 4096) {
  GroupPreservation g;
  g.base_is_group = is_group(base);
  g.skeleton_is_group = is_group(sys.skeleton);
  g.system_unital = is_unital(sys).unital;
  g.predicted = g.base_is_group && g.skeleton_is_group &&
                (base.order <= 1 || g.system_unital);
  g.actual = is_group(build_product(base, sys, cap).semigroup);
  g.matches = g.predicted == g.actual;
  return g;
}

// ---------------------------------------------------------------------------
// Wreath products, built directly from their own formulas

/// H wr S with carrier H^S x S and (f, x)(g, y) = (i |-> f(i) g(ix), xy).
/// Element ids match build_product over left_action_system(s, right
/// regular action): x-major, then tuple rank.
inline FiniteSemigroup wreath_product(const FiniteSemigroup& base,
                                      const FiniteSemigroup& s,
                                      long long cap = 4096) {
  int m = base.order, n = s.order;
  long long tuples = 1;
  for (int i = 0; i < n; ++i) {
    tuples *= m;
    if (tuples * n > cap) throw CapExceeded("wreath product exceeds cap");
  }
  long long total = tuples * n;
  int order = static_cast<int>(total);

  auto decode = [&](int id, std::vector<int>& f, int& x) {
    x = id / static_cast<int>(tuples);
    long long r = id % tuples;
    f.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      f[i] = static_cast<int>(r % m);
      r /= m;
    }
  };
  auto encode = [&](const std::vector<int>& f, int x) {
    long long rank = 0, pw = 1;
    for (int i = 0; i < n; ++i) {
      rank += f[i] * pw;
      pw *= m;
    }
    return x * static_cast<int>(tuples) + static_cast<int>(rank);
  };

  Table table(order, std::vector<int>(order));
  std::vector<int> f, g, h(n);
  int x, y;
  for (int i = 0; i < order; ++i) {
    decode(i, f, x);
    for (int j = 0; j < order; ++j) {
      decode(j, g, y);
      for (int p = 0; p < n; ++p) h[p] = base.at(f[p], g[s.at(p, x)]);
      table[i][j] = encode(h, s.at(x, y));
    }
  }
  std::vector<std::string> labels(order);
  for (int i = 0; i < order; ++i) {
    decode(i, f, x);
    std::string lab = "(";
    for (int p = 0; p < n; ++p) {
      if (p) lab += ',';
      lab += std::to_string(f[p]);
    }
    lab += '|' + s.label(x) + ')';
    labels[i] = std::move(lab);
  }
  return from_table(std::move(table), std::move(labels));
}

/// Two-sided variant for a group G: carrier H^G x G with
/// (f, x)(g, y) = (i |-> f(i y^{-1}) g(x^{-1} i), xy).  Matches the product
/// over two_sided_action_system with a\i = a^{-1} i and i/a = i a^{-1}.
inline FiniteSemigroup two_sided_wreath_product(const FiniteSemigroup& base,
                                                const FiniteSemigroup& s,
                                                long long cap = 4096) {
  if (!is_group(s)) throw Mismatch("two-sided wreath needs a group");
  int m = base.order, n = s.order;
  auto e = identity_of(s);
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (s.at(a, b) == *e && s.at(b, a) == *e) inv[a] = b;

  long long tuples = 1;
  for (int i = 0; i < n; ++i) {
    tuples *= m;
    if (tuples * n > cap) throw CapExceeded("wreath product exceeds cap");
  }
  int order = static_cast<int>(tuples * n);

  auto decode = [&](int id, std::vector<int>& f, int& x) {
    x = id / static_cast<int>(tuples);
    long long r = id % tuples;
    f.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      f[i] = static_cast<int>(r % m);
      r /= m;
    }
  };
  auto encode = [&](const std::vector<int>& f, int x) {
    long long rank = 0, pw = 1;
    for (int i = 0; i < n; ++i) {
      rank += f[i] * pw;
      pw *= m;
    }
    return x * static_cast<int>(tuples) + static_cast<int>(rank);
  };

  Table table(order, std::vector<int>(order));
  std::vector<int> f, g, h(n);
  int x, y;
  for (int i = 0; i < order; ++i) {
    decode(i, f, x);
    for (int j = 0; j < order; ++j) {
      decode(j, g, y);
      for (int p = 0; p < n; ++p)
        h[p] = base.at(f[s.at(p, inv[y])], g[s.at(inv[x], p)]);
      table[i][j] = encode(h, s.at(x, y));
    }
  }
  std::vector<std::string> labels(order);
  for (int i = 0; i < order; ++i) {
    decode(i, f, x);
    std::string lab = "(";
    for (int p = 0; p < n; ++p) {
      if (p) lab += ',';
      lab += std::to_string(f[p]);
    }
    lab += '|' + s.label(x) + ')';
    labels[i] = std::move(lab);
  }
  return from_table(std::move(table), std::move(labels));
}

}  // namespace lrs
