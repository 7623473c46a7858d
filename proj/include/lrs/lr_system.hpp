#pragma once

// Lambda-rho systems over a finite semigroup S: an index set I[a] for every
// element, and for every pair (a,b) a pair of maps
//
//     lambda[a,b] : I[ab] -> I[a]        rho[a,b] : I[ab] -> I[b]
//
// subject to three coherence equations, for all a, b, c (composition is
// right-to-left, (g o f)(x) = g(f(x))):
//
//   (alpha)  lambda[a,b] o lambda[ab,c] = lambda[a,bc]
//   (beta)   rho[b,c] o rho[a,bc]       = rho[ab,c]
//   (gamma)  rho[a,b] o lambda[ab,c]    = lambda[b,c] o rho[a,bc]
//
// These are exactly the conditions making the lambda-rho product of any
// semigroup H along the system associative (see lr_product.hpp).
//
// Index sets are the ranges [0, k_a); maps are stored as value arrays of
// length k_{ab}.  Transformations follow the arrow convention of the
// Grothendieck construction: an arrow S' -> S carries a skeleton
// homomorphism running the *opposite* way, h : S -> S', and index maps
// t[a] : I'[h(a)] -> I[a] for each a in S.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lrs/semigroup.hpp"

namespace lrs {

using IndexMap = std::vector<int>;
using PairMaps = std::vector<std::vector<IndexMap>>;  // [a][b] -> map array

enum class Condition { alpha, beta, gamma };

inline const char* to_string(Condition c) {
  switch (c) {
    case Condition::alpha: return "alpha";
    case Condition::beta: return "beta";
    default: return "gamma";
  }
}

struct AxiomViolation {
  Condition cond;
  int a, b, c;
  int index;  // the point of I[abc] where the two sides differ

  friend bool operator==(const AxiomViolation& x, const AxiomViolation& y) {
    return x.cond == y.cond && x.a == y.a && x.b == y.b && x.c == y.c &&
           x.index == y.index;
  }
};

struct ArityMismatch : Error { using Error::Error; };
struct InvalidAction : Error { using Error::Error; };
struct NotUnital : Error { using Error::Error; };

struct AxiomError : Error {
  std::vector<AxiomViolation> violations;
  explicit AxiomError(std::vector<AxiomViolation> v)
      : Error("system violates " + std::to_string(v.size()) +
              " axiom instance(s); first at (" + to_string(v.front().cond) +
              "," + std::to_string(v.front().a) + "," +
              std::to_string(v.front().b) + "," + std::to_string(v.front().c) +
              "," + std::to_string(v.front().index) + ")"),
        violations(std::move(v)) {}
};

struct LrSystem {
  FiniteSemigroup skeleton;
  std::vector<int> index_sizes;  // k_a per element
  PairMaps lambda;               // lambda[a][b] has length k_{ab}, values < k_a
  PairMaps rho;                  // rho[a][b] has length k_{ab}, values < k_b

  int size_at(int a) const { return index_sizes[a]; }

  friend bool operator==(const LrSystem& x, const LrSystem& y) {
    return x.skeleton == y.skeleton && x.index_sizes == y.index_sizes &&
           x.lambda == y.lambda && x.rho == y.rho;
  }
};

inline void check_arities(const LrSystem& sys) {
  int n = sys.skeleton.order;
  if (static_cast<int>(sys.index_sizes.size()) != n)
    throw ArityMismatch("index_sizes length != skeleton order");
  for (int k : sys.index_sizes)
    if (k < 0) throw ArityMismatch("negative index size");
  for (const PairMaps* maps : {&sys.lambda, &sys.rho}) {
    bool left = maps == &sys.lambda;
    if (static_cast<int>(maps->size()) != n)
      throw ArityMismatch("pair map table has wrong number of rows");
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>((*maps)[a].size()) != n)
        throw ArityMismatch("pair map row " + std::to_string(a) +
                            " has wrong length");
      for (int b = 0; b < n; ++b) {
        const IndexMap& m = (*maps)[a][b];
        int dom = sys.index_sizes[sys.skeleton.at(a, b)];
        int cod = sys.index_sizes[left ? a : b];
        if (static_cast<int>(m.size()) != dom)
          throw ArityMismatch((left ? std::string("lambda[") : "rho[") +
                              std::to_string(a) + "," + std::to_string(b) +
                              "] has length " + std::to_string(m.size()) +
                              ", expected " + std::to_string(dom));
        for (int v : m)
          if (v < 0 || v >= cod)
            throw OutOfRange((left ? std::string("lambda[") : "rho[") +
                             std::to_string(a) + "," + std::to_string(b) +
                             "] value " + std::to_string(v) + " outside [0," +
                             std::to_string(cod) + ")");
      }
    }
  }
}

/// Every (alpha)/(beta)/(gamma) failure, in (a,b,c, condition, index) scan
/// order.  Arities are assumed valid.
inline std::vector<AxiomViolation> check_axioms(const LrSystem& sys) {
  std::vector<AxiomViolation> out;
  int n = sys.skeleton.order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int ab = sys.skeleton.at(a, b);
        int bc = sys.skeleton.at(b, c);
        int abc = sys.skeleton.at(ab, c);
        const IndexMap& lam_ab = sys.lambda[a][b];
        const IndexMap& lam_ab_c = sys.lambda[ab][c];
        const IndexMap& lam_a_bc = sys.lambda[a][bc];
        const IndexMap& rho_bc = sys.rho[b][c];
        const IndexMap& rho_a_bc = sys.rho[a][bc];
        const IndexMap& rho_ab_c = sys.rho[ab][c];
        const IndexMap& rho_ab = sys.rho[a][b];
        const IndexMap& lam_bc = sys.lambda[b][c];
        for (int i = 0; i < sys.index_sizes[abc]; ++i)
          if (lam_ab[lam_ab_c[i]] != lam_a_bc[i])
            out.push_back({Condition::alpha, a, b, c, i});
        for (int i = 0; i < sys.index_sizes[abc]; ++i)
          if (rho_bc[rho_a_bc[i]] != rho_ab_c[i])
            out.push_back({Condition::beta, a, b, c, i});
        for (int i = 0; i < sys.index_sizes[abc]; ++i)
          if (rho_ab[lam_ab_c[i]] != lam_bc[rho_a_bc[i]])
            out.push_back({Condition::gamma, a, b, c, i});
      }
  return out;
}

/// Validating constructor: arity errors throw ArityMismatch/OutOfRange,
/// axiom failures throw AxiomError carrying the full violation list.
inline LrSystem make_system(LrSystem data) {
  check_arities(data);
  auto violations = check_axioms(data);
  if (!violations.empty()) throw AxiomError(std::move(violations));
  return data;
}

// ---------------------------------------------------------------------------
// Canonical systems

inline LrSystem empty_system(const FiniteSemigroup& s) {
  int n = s.order;
  LrSystem sys{s, std::vector<int>(n, 0),
               PairMaps(n, std::vector<IndexMap>(n)),
               PairMaps(n, std::vector<IndexMap>(n))};
  return make_system(std::move(sys));
}

inline LrSystem singleton_system(const FiniteSemigroup& s) {
  int n = s.order;
  LrSystem sys{s, std::vector<int>(n, 1),
               PairMaps(n, std::vector<IndexMap>(n, IndexMap{0})),
               PairMaps(n, std::vector<IndexMap>(n, IndexMap{0}))};
  return make_system(std::move(sys));
}

/// Right-translation action: `action[x][a]` is x.a, required to satisfy
/// (x.a).b = x.(ab).  Yields I[s] = X, lambda = identity, rho[a,b] = _.a.
inline LrSystem left_action_system(const FiniteSemigroup& s,
                                   const Table& action) {
  int n = s.order;
  int m = static_cast<int>(action.size());
  for (const auto& row : action) {
    if (static_cast<int>(row.size()) != n)
      throw InvalidAction("action table must be |X| x |S|");
    for (int v : row)
      if (v < 0 || v >= m) throw InvalidAction("action value outside X");
  }
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (action[action[x][a]][b] != action[x][s.at(a, b)])
          throw InvalidAction("(x.a).b != x.(ab) at x=" + std::to_string(x) +
                              " a=" + std::to_string(a) +
                              " b=" + std::to_string(b));
  IndexMap ident(m);
  for (int i = 0; i < m; ++i) ident[i] = i;
  LrSystem sys{s, std::vector<int>(n, m),
               PairMaps(n, std::vector<IndexMap>(n, ident)),
               PairMaps(n, std::vector<IndexMap>(n))};
  for (int a = 0; a < n; ++a) {
    IndexMap dot_a(m);
    for (int i = 0; i < m; ++i) dot_a[i] = action[i][a];
    for (int b = 0; b < n; ++b) sys.rho[a][b] = dot_a;
  }
  return make_system(std::move(sys));
}

/// Two-sided action: back[a][x] = a\x and slash[x][a] = x/a with
///   a\(b\x) = (ba)\x,   (x/a)/b = x/(ba),   (a\x)/b = a\(x/b).
/// Yields lambda[a,b] = _/b and rho[a,b] = a\_.
inline LrSystem two_sided_action_system(const FiniteSemigroup& s,
                                        const Table& back,
                                        const Table& slash) {
  int n = s.order;
  int m = static_cast<int>(slash.size());
  if (static_cast<int>(back.size()) != n)
    throw InvalidAction("back table must be |S| x |X|");
  for (const auto& row : back)
    if (static_cast<int>(row.size()) != m)
      throw InvalidAction("back table must be |S| x |X|");
  for (const auto& row : slash)
    if (static_cast<int>(row.size()) != n)
      throw InvalidAction("slash table must be |X| x |S|");
  auto in_range = [&](int v) { return v >= 0 && v < m; };
  for (const auto& row : back)
    for (int v : row)
      if (!in_range(v)) throw InvalidAction("back value outside X");
  for (const auto& row : slash)
    for (int v : row)
      if (!in_range(v)) throw InvalidAction("slash value outside X");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int x = 0; x < m; ++x) {
        if (back[a][back[b][x]] != back[s.at(b, a)][x])
          throw InvalidAction("a\\(b\\x) != (ba)\\x");
        if (slash[slash[x][a]][b] != slash[x][s.at(b, a)])
          throw InvalidAction("(x/a)/b != x/(ba)");
        if (slash[back[a][x]][b] != back[a][slash[x][b]])
          throw InvalidAction("(a\\x)/b != a\\(x/b)");
      }
  LrSystem sys{s, std::vector<int>(n, m),
               PairMaps(n, std::vector<IndexMap>(n)),
               PairMaps(n, std::vector<IndexMap>(n))};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      IndexMap lam(m), rho(m);
      for (int i = 0; i < m; ++i) {
        lam[i] = slash[i][b];
        rho[i] = back[a][i];
      }
      sys.lambda[a][b] = std::move(lam);
      sys.rho[a][b] = std::move(rho);
    }
  return make_system(std::move(sys));
}

/// Over the trivial skeleton: I = {0,1}, lambda = id, rho = constant 0.
/// Its Z2 product is the standard 4x4 left-zero-quotient example.
inline LrSystem lzero_example() {
  LrSystem sys{trivial_semigroup(), {2},
               {{IndexMap{0, 1}}},
               {{IndexMap{0, 0}}}};
  return make_system(std::move(sys));
}

/// Over the two-element semilattice: I[0] = {0}, I[1] = {0,1};
/// lambda[1,0] = rho[0,1] = lambda[1,1] = id, rho[1,1] = constant 0.
/// Its Z2 product has the flip-flop monoid as a quotient.
inline LrSystem flipflop_example() {
  LrSystem sys{semilattice2(), {1, 2},
               {{IndexMap{0}, IndexMap{0, 0}}, {IndexMap{0, 1}, IndexMap{0, 1}}},
               {{IndexMap{0}, IndexMap{0, 1}}, {IndexMap{0, 0}, IndexMap{0, 0}}}};
  return make_system(std::move(sys));
}

// ---------------------------------------------------------------------------
// Unitality

struct UnitalReport {
  bool unital = false;
  std::optional<int> unit;
  std::vector<std::string> failures;
};

/// A system is unital when the skeleton is a monoid and lambda[a,1] and
/// rho[1,a] are the identity on I[a] for every a.
inline UnitalReport is_unital(const LrSystem& sys) {
  UnitalReport rep;
  rep.unit = identity_of(sys.skeleton);
  if (!rep.unit) {
    rep.failures.push_back("skeleton has no identity");
    return rep;
  }
  int e = *rep.unit;
  rep.unital = true;
  for (int a = 0; a < sys.skeleton.order; ++a) {
    for (int i = 0; i < sys.index_sizes[a]; ++i) {
      if (sys.lambda[a][e][i] != i) {
        rep.unital = false;
        rep.failures.push_back("lambda[" + std::to_string(a) + ",1](" +
                               std::to_string(i) + ") != " +
                               std::to_string(i));
      }
      if (sys.rho[e][a][i] != i) {
        rep.unital = false;
        rep.failures.push_back("rho[1," + std::to_string(a) + "](" +
                               std::to_string(i) + ") != " +
                               std::to_string(i));
      }
    }
  }
  return rep;
}

/// Adjoin a fresh unit (id n) with singleton index set: lambda[1,a] and
/// rho[a,1] are the constant maps into I[1], lambda[a,1] and rho[1,a] the
/// identities.  Always unital; the original system is the restriction to
/// the old ids.
inline LrSystem unital_extension(const LrSystem& sys) {
  int n = sys.skeleton.order;
  FiniteSemigroup sk = adjoin_unit(sys.skeleton);
  LrSystem ext{sk, sys.index_sizes,
               PairMaps(n + 1, std::vector<IndexMap>(n + 1)),
               PairMaps(n + 1, std::vector<IndexMap>(n + 1))};
  ext.index_sizes.push_back(1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ext.lambda[a][b] = sys.lambda[a][b];
      ext.rho[a][b] = sys.rho[a][b];
    }
  for (int a = 0; a <= n; ++a) {
    int k = ext.index_sizes[a];
    IndexMap ident(k), constant(k, 0);
    for (int i = 0; i < k; ++i) ident[i] = i;
    ext.lambda[a][n] = ident;     // lambda[a,1] = id on I[a]
    ext.rho[n][a] = ident;        // rho[1,a]   = id on I[a]
    ext.lambda[n][a] = constant;  // lambda[1,a]: I[a] -> I[1]
    ext.rho[a][n] = constant;     // rho[a,1]  : I[a] -> I[1]
  }
  return make_system(std::move(ext));
}

// ---------------------------------------------------------------------------
// Transformations

struct SquareViolation {
  int a, b;
  char side;  // 'L' or 'R'
  int index;
};

struct TransformationReport {
  bool ok = true;
  std::vector<SquareViolation> violations;
};

/// Arrow source -> target in the transformation category.  The skeleton
/// homomorphism runs the opposite way, target skeleton to source skeleton,
/// and index_maps[a] : I_source[h(a)] -> I_target[a] for a in the target
/// skeleton.  The induced map on products goes H^[target] -> H^[source].
struct Transformation {
  LrSystem source;
  LrSystem target;
  std::vector<int> skeleton_hom;      // h, indexed by target skeleton
  std::vector<IndexMap> index_maps;   // t[a], indexed by target skeleton
};

inline TransformationReport validate_transformation(const Transformation& t) {
  TransformationReport rep;
  const LrSystem& src = t.source;
  const LrSystem& tgt = t.target;
  int n = tgt.skeleton.order;
  if (static_cast<int>(t.skeleton_hom.size()) != n ||
      static_cast<int>(t.index_maps.size()) != n)
    throw ArityMismatch("transformation arity does not match target skeleton");
  for (int a = 0; a < n; ++a) {
    int ha = t.skeleton_hom[a];
    if (ha < 0 || ha >= src.skeleton.order)
      throw OutOfRange("skeleton_hom value outside source skeleton");
    if (static_cast<int>(t.index_maps[a].size()) != src.index_sizes[ha])
      throw ArityMismatch("index map " + std::to_string(a) +
                          " domain size mismatch");
    for (int v : t.index_maps[a])
      if (v < 0 || v >= tgt.index_sizes[a])
        throw OutOfRange("index map value outside target index set");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.skeleton_hom[tgt.skeleton.at(a, b)] !=
          src.skeleton.at(t.skeleton_hom[a], t.skeleton_hom[b]))
        throw Mismatch("skeleton_hom is not a homomorphism");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = tgt.skeleton.at(a, b);
      int ha = t.skeleton_hom[a], hb = t.skeleton_hom[b];
      int hab = src.skeleton.at(ha, hb);
      for (int i = 0; i < src.index_sizes[hab]; ++i) {
        // t[a] o lambda'[h(a),h(b)] = lambda[a,b] o t[ab]
        if (t.index_maps[a][src.lambda[ha][hb][i]] !=
            tgt.lambda[a][b][t.index_maps[ab][i]]) {
          rep.ok = false;
          rep.violations.push_back({a, b, 'L', i});
        }
        // t[b] o rho'[h(a),h(b)] = rho[a,b] o t[ab]
        if (t.index_maps[b][src.rho[ha][hb][i]] !=
            tgt.rho[a][b][t.index_maps[ab][i]]) {
          rep.ok = false;
          rep.violations.push_back({a, b, 'R', i});
        }
      }
    }
  return rep;
}

inline Transformation identity_transformation(const LrSystem& sys) {
  int n = sys.skeleton.order;
  Transformation t{sys, sys, std::vector<int>(n), std::vector<IndexMap>(n)};
  for (int a = 0; a < n; ++a) {
    t.skeleton_hom[a] = a;
    t.index_maps[a].resize(sys.index_sizes[a]);
    for (int i = 0; i < sys.index_sizes[a]; ++i) t.index_maps[a][i] = i;
  }
  return t;
}

/// Restriction to a closed subset: the subsystem, plus the embedding
/// transformation sys -> subsystem (h is the inclusion, index maps are
/// identities), validated before returning.
inline std::pair<LrSystem, Transformation> restrict_system(
    const LrSystem& sys, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  FiniteSemigroup sub = subsemigroup(sys.skeleton, subset);
  int m = sub.order;
  LrSystem out{sub, std::vector<int>(m),
               PairMaps(m, std::vector<IndexMap>(m)),
               PairMaps(m, std::vector<IndexMap>(m))};
  for (int i = 0; i < m; ++i) out.index_sizes[i] = sys.index_sizes[subset[i]];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      out.lambda[i][j] = sys.lambda[subset[i]][subset[j]];
      out.rho[i][j] = sys.rho[subset[i]][subset[j]];
    }
  out = make_system(std::move(out));

  Transformation emb{sys, out, subset, std::vector<IndexMap>(m)};
  for (int i = 0; i < m; ++i) {
    emb.index_maps[i].resize(out.index_sizes[i]);
    for (int v = 0; v < out.index_sizes[i]; ++v) emb.index_maps[i][v] = v;
  }
  auto rep = validate_transformation(emb);
  if (!rep.ok) throw Error("restriction embedding failed validation");
  return {std::move(out), std::move(emb)};
}

/// Reindex a system along a homomorphism f : S1 -> S2 (sys lives over S2):
/// I'[x] = I[f(x)], lambda'[x,y] = lambda[f(x),f(y)], likewise rho.
inline LrSystem pullback_along_hom(const Homomorphism& f,
                                   const LrSystem& sys) {
  if (!(f.target == sys.skeleton))
    throw Mismatch("hom target differs from system skeleton");
  if (!is_homomorphism(f)) throw Mismatch("map is not a homomorphism");
  int n = f.source.order;
  LrSystem out{f.source, std::vector<int>(n),
               PairMaps(n, std::vector<IndexMap>(n)),
               PairMaps(n, std::vector<IndexMap>(n))};
  for (int x = 0; x < n; ++x) out.index_sizes[x] = sys.index_sizes[f.map[x]];
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      out.lambda[x][y] = sys.lambda[f.map[x]][f.map[y]];
      out.rho[x][y] = sys.rho[f.map[x]][f.map[y]];
    }
  return make_system(std::move(out));
}

/// Composite of arrows t1 : S1 -> S2 and t2 : S2 -> S3, yielding S1 -> S3.
/// Skeleton homs compose contravariantly (h = h1 o h2); index maps compose
/// per target element, t[a] = t2[a] o t1[h2(a)].  Result is re-validated.
inline Transformation compose_transformations(const Transformation& t1,
                                              const Transformation& t2) {
  if (!(t1.target == t2.source))
    throw Mismatch("transformations not composable: middle systems differ");
  int n = t2.target.skeleton.order;
  Transformation out{t1.source, t2.target, std::vector<int>(n),
                     std::vector<IndexMap>(n)};
  for (int a = 0; a < n; ++a) {
    int h2a = t2.skeleton_hom[a];
    out.skeleton_hom[a] = t1.skeleton_hom[h2a];
    const IndexMap& first = t1.index_maps[h2a];
    out.index_maps[a].resize(first.size());
    for (size_t i = 0; i < first.size(); ++i)
      out.index_maps[a][i] = t2.index_maps[a][first[i]];
  }
  auto rep = validate_transformation(out);
  if (!rep.ok) throw Error("composite transformation failed validation");
  return out;
}

// ---------------------------------------------------------------------------

struct EmptyIndexIdeal {
  std::vector<int> members;  // J = { s : I[s] empty }
  bool is_ideal = true;      // vacuously true when J is empty
};

/// In a valid system the elements with empty index sets always form a
/// two-sided ideal (or there are none); this recomputes the fact directly.
inline EmptyIndexIdeal empty_index_ideal(const LrSystem& sys) {
  EmptyIndexIdeal out;
  int n = sys.skeleton.order;
  for (int a = 0; a < n; ++a)
    if (sys.index_sizes[a] == 0) out.members.push_back(a);
  std::vector<bool> in_j(n, false);
  for (int j : out.members) in_j[j] = true;
  for (int j : out.members)
    for (int s = 0; s < n; ++s)
      if (!in_j[sys.skeleton.at(j, s)] || !in_j[sys.skeleton.at(s, j)])
        out.is_ideal = false;
  return out;
}

}  // namespace lrs
