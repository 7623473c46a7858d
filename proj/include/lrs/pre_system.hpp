#pragma once

// Pre-lambda-rho-systems over a monoid: a single index set I = I[1] plus
// maps lambda1[a], rho1[a] : I[a] -> I with lambda1[1] = rho1[1] = id.
// Unital systems restrict to these (lambda1[a] = lambda[1,a],
// rho1[a] = rho[a,1]); conversely a pre-system lifts back to a full system
// by choosing, for every pair (a,b), maps lam : I[ab] -> I[a] and
// rho : I[ab] -> I[b] with
//
//   (alpha')  lambda1[a] o lam = lambda1[ab]
//   (beta')   rho1[b] o rho    = rho1[ab]
//   (gamma')  rho1[a] o lam    = lambda1[b] o rho
//
// The lift produces a valid unital system whenever the chosen solutions
// satisfy four cancellation implications (delta1..delta4, checked per
// triple below).  Solutions decouple per index of I[ab], so enumeration is
// a product of small per-index choice sets.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrs/lr_system.hpp"
#include "lrs/semigroup.hpp"

namespace lrs {

struct NoSolution : Error { using Error::Error; };

struct PreLrSystem {
  FiniteSemigroup skeleton;  // must be a monoid
  int base_size = 0;         // |I|, equal to k_1
  std::vector<int> index_sizes;
  std::vector<IndexMap> lambda1;  // lambda1[a] : I[a] -> I
  std::vector<IndexMap> rho1;    // rho1[a]   : I[a] -> I

  int unit() const {
    auto e = identity_of(skeleton);
    if (!e) throw NotUnital("skeleton has no identity");
    return *e;
  }

  friend bool operator==(const PreLrSystem& x, const PreLrSystem& y) {
    return x.skeleton == y.skeleton && x.base_size == y.base_size &&
           x.index_sizes == y.index_sizes && x.lambda1 == y.lambda1 &&
           x.rho1 == y.rho1;
  }
};

inline PreLrSystem make_pre_system(PreLrSystem p) {
  int n = p.skeleton.order;
  int e = p.unit();
  if (static_cast<int>(p.index_sizes.size()) != n ||
      static_cast<int>(p.lambda1.size()) != n ||
      static_cast<int>(p.rho1.size()) != n)
    throw ArityMismatch("pre-system arrays must match skeleton order");
  if (p.index_sizes[e] != p.base_size)
    throw ArityMismatch("k_1 must equal base_size");
  for (int a = 0; a < n; ++a) {
    if (p.index_sizes[a] < 0) throw ArityMismatch("negative index size");
    for (const std::vector<IndexMap>* maps : {&p.lambda1, &p.rho1}) {
      const IndexMap& m = (*maps)[a];
      if (static_cast<int>(m.size()) != p.index_sizes[a])
        throw ArityMismatch("map length for element " + std::to_string(a) +
                            " does not match its index size");
      for (int v : m)
        if (v < 0 || v >= p.base_size)
          throw OutOfRange("map value outside base index set");
    }
  }
  for (int i = 0; i < p.base_size; ++i)
    if (p.lambda1[e][i] != i || p.rho1[e][i] != i)
      throw ArityMismatch("unit maps must be the identity on I");
  return p;
}

/// Restriction of a unital system to its base data (Lemma: every unital
/// system yields a pre-system, with solutions witnessed by its own maps).
inline PreLrSystem extract_pre(const LrSystem& sys) {
  UnitalReport rep = is_unital(sys);
  if (!rep.unital) throw NotUnital("extract_pre needs a unital system");
  int e = *rep.unit;
  PreLrSystem p{sys.skeleton, sys.index_sizes[e], sys.index_sizes, {}, {}};
  p.lambda1.reserve(sys.skeleton.order);
  p.rho1.reserve(sys.skeleton.order);
  for (int a = 0; a < sys.skeleton.order; ++a) {
    p.lambda1.push_back(sys.lambda[e][a]);
    p.rho1.push_back(sys.rho[a][e]);
  }
  return make_pre_system(std::move(p));
}

// ---------------------------------------------------------------------------
// Solutions for a single pair

struct SolutionPair {
  int a = 0, b = 0;
  IndexMap lam;  // I[ab] -> I[a]
  IndexMap rho;  // I[ab] -> I[b]

  friend bool operator==(const SolutionPair& x, const SolutionPair& y) {
    return x.a == y.a && x.b == y.b && x.lam == y.lam && x.rho == y.rho;
  }
};

inline bool is_solution(const PreLrSystem& pre, const SolutionPair& s) {
  int ab = pre.skeleton.at(s.a, s.b);
  int k = pre.index_sizes[ab];
  if (static_cast<int>(s.lam.size()) != k ||
      static_cast<int>(s.rho.size()) != k)
    return false;
  for (int i = 0; i < k; ++i) {
    int u = s.lam[i], v = s.rho[i];
    if (u < 0 || u >= pre.index_sizes[s.a]) return false;
    if (v < 0 || v >= pre.index_sizes[s.b]) return false;
    if (pre.lambda1[s.a][u] != pre.lambda1[ab][i]) return false;
    if (pre.rho1[s.b][v] != pre.rho1[ab][i]) return false;
    if (pre.rho1[s.a][u] != pre.lambda1[s.b][v]) return false;
  }
  return true;
}

/// All solutions for the pair (a,b).  The three equations constrain each
/// index of I[ab] independently, so the solutions are the product of
/// per-index choice sets; enumeration runs index 0 fastest, choices in
/// (u,v)-lexicographic order.
inline std::vector<SolutionPair> solve_pairs(const PreLrSystem& pre, int a,
                                             int b, long long cap = 1000000) {
  int ab = pre.skeleton.at(a, b);
  int k = pre.index_sizes[ab];
  std::vector<std::vector<std::pair<int, int>>> choices(k);
  for (int i = 0; i < k; ++i) {
    for (int u = 0; u < pre.index_sizes[a]; ++u) {
      if (pre.lambda1[a][u] != pre.lambda1[ab][i]) continue;
      for (int v = 0; v < pre.index_sizes[b]; ++v)
        if (pre.rho1[b][v] == pre.rho1[ab][i] &&
            pre.rho1[a][u] == pre.lambda1[b][v])
          choices[i].push_back({u, v});
    }
    if (choices[i].empty())
      throw NoSolution("no (lam,rho) value for pair (" + std::to_string(a) +
                       "," + std::to_string(b) + ") at index " +
                       std::to_string(i));
  }
  long long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<long long>(choices[i].size());
    if (total > cap)
      throw CapExceeded("solution count for pair exceeds cap");
  }
  std::vector<SolutionPair> out;
  out.reserve(static_cast<size_t>(total));
  std::vector<int> pick(k, 0);
  for (long long r = 0; r < total; ++r) {
    SolutionPair s{a, b, IndexMap(k), IndexMap(k)};
    for (int i = 0; i < k; ++i) {
      s.lam[i] = choices[i][pick[i]].first;
      s.rho[i] = choices[i][pick[i]].second;
    }
    out.push_back(std::move(s));
    for (int i = 0; i < k; ++i) {
      if (++pick[i] < static_cast<int>(choices[i].size())) break;
      pick[i] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Natural solutions (the four cancellation implications)

enum class DeltaMode { all_solutions, given };

struct SolutionFamily {
  PairMaps lambda, rho;  // one chosen solution per pair, [a][b]
};

struct DeltaViolation {
  int delta;  // 1..4
  int a, b, c, index;
  SolutionPair at_ab, at_bc, at_ab_c, at_a_bc;  // instantiating maps
};

struct DeltaReport {
  bool ok = true;
  std::vector<DeltaViolation> violations;
  long long assignments_checked = 0;
};

struct NaturalSolutionsFail : Error {
  DeltaReport report;
  explicit NaturalSolutionsFail(DeltaReport r)
      : Error("chosen solutions fail the delta conditions (" +
              std::to_string(r.violations.size()) + " violation(s))"),
        report(std::move(r)) {}
};

namespace detail {

/// delta1..delta4 at one triple for one assignment of solutions to the
/// four involved pairs.  Appends violations; returns true when none found.
inline bool delta_check_triple(const PreLrSystem& pre, int a, int b, int c,
                               const SolutionPair& sAB,
                               const SolutionPair& sBC,
                               const SolutionPair& sAB_C,
                               const SolutionPair& sA_BC,
                               std::vector<DeltaViolation>& out) {
  int ab = pre.skeleton.at(a, b);
  int abc = pre.skeleton.at(ab, c);
  bool clean = true;
  auto record = [&](int d, int i) {
    out.push_back({d, a, b, c, i, sAB, sBC, sAB_C, sA_BC});
    clean = false;
  };
  for (int i = 0; i < pre.index_sizes[abc]; ++i) {
    int l1 = sAB.lam[sAB_C.lam[i]], r1 = sA_BC.lam[i];
    if (pre.lambda1[a][l1] == pre.lambda1[a][r1] && l1 != r1) record(1, i);
    int l2 = sBC.rho[sA_BC.rho[i]], r2 = sAB_C.rho[i];
    if (pre.rho1[c][l2] == pre.rho1[c][r2] && l2 != r2) record(2, i);
    int l3 = sAB.rho[sAB_C.lam[i]], r3 = sBC.lam[sA_BC.rho[i]];
    if (pre.rho1[b][l3] == pre.rho1[b][r3] && l3 != r3) record(3, i);
    if (pre.lambda1[b][l3] == pre.lambda1[b][r3] && l3 != r3) record(4, i);
  }
  return clean;
}

}  // namespace detail

/// `given` mode checks the supplied family (every entry must be a
/// solution) and lists all violations.  `all_solutions` mode quantifies
/// over every assignment of solutions to the pairs involved in each triple
/// (coinciding pairs receive the same solution) and stops at the first
/// failing assignment.
inline DeltaReport check_natural_solutions(
    const PreLrSystem& pre, DeltaMode mode,
    const std::optional<SolutionFamily>& family = std::nullopt,
    long long cap = 1000000) {
  int n = pre.skeleton.order;
  DeltaReport rep;

  if (mode == DeltaMode::given) {
    if (!family) throw Error("given mode requires a solution family");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        SolutionPair s{a, b, family->lambda[a][b], family->rho[a][b]};
        if (!is_solution(pre, s))
          throw Mismatch("family entry at (" + std::to_string(a) + "," +
                         std::to_string(b) + ") is not a solution");
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          int ab = pre.skeleton.at(a, b);
          int bc = pre.skeleton.at(b, c);
          SolutionPair sAB{a, b, family->lambda[a][b], family->rho[a][b]};
          SolutionPair sBC{b, c, family->lambda[b][c], family->rho[b][c]};
          SolutionPair sAB_C{ab, c, family->lambda[ab][c],
                             family->rho[ab][c]};
          SolutionPair sA_BC{a, bc, family->lambda[a][bc],
                             family->rho[a][bc]};
          ++rep.assignments_checked;
          detail::delta_check_triple(pre, a, b, c, sAB, sBC, sAB_C, sA_BC,
                                     rep.violations);
        }
    rep.ok = rep.violations.empty();
    return rep;
  }

  std::map<std::pair<int, int>, std::vector<SolutionPair>> cache;
  auto solutions_at = [&](int a, int b) -> const std::vector<SolutionPair>& {
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, solve_pairs(pre, a, b, cap)).first;
    return it->second;
  };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int ab = pre.skeleton.at(a, b);
        int bc = pre.skeleton.at(b, c);
        std::vector<std::pair<int, int>> slots = {
            {a, b}, {b, c}, {ab, c}, {a, bc}};
        std::vector<std::pair<int, int>> uniq;
        std::vector<int> slot_of(4);
        for (int s = 0; s < 4; ++s) {
          auto it = std::find(uniq.begin(), uniq.end(), slots[s]);
          if (it == uniq.end()) {
            slot_of[s] = static_cast<int>(uniq.size());
            uniq.push_back(slots[s]);
          } else {
            slot_of[s] = static_cast<int>(it - uniq.begin());
          }
        }
        std::vector<const std::vector<SolutionPair>*> sols;
        long long combos = 1;
        for (const auto& p : uniq) {
          sols.push_back(&solutions_at(p.first, p.second));
          combos *= static_cast<long long>(sols.back()->size());
          if (combos > cap)
            throw CapExceeded("solution assignments per triple exceed cap");
        }
        std::vector<int> pick(uniq.size(), 0);
        for (long long r = 0; r < combos; ++r) {
          ++rep.assignments_checked;
          if (rep.assignments_checked > cap)
            throw CapExceeded("delta-check work exceeds cap");
          if (!detail::delta_check_triple(
                  pre, a, b, c, (*sols[slot_of[0]])[pick[slot_of[0]]],
                  (*sols[slot_of[1]])[pick[slot_of[1]]],
                  (*sols[slot_of[2]])[pick[slot_of[2]]],
                  (*sols[slot_of[3]])[pick[slot_of[3]]], rep.violations)) {
            rep.ok = false;
            return rep;
          }
          for (size_t i = 0; i < pick.size(); ++i) {
            if (++pick[i] < static_cast<int>(sols[i]->size())) break;
            pick[i] = 0;
          }
        }
      }
  rep.ok = rep.violations.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Lift back to a full system

using Chooser =
    std::function<SolutionPair(int a, int b, const std::vector<SolutionPair>&)>;

/// Assemble a unital LrSystem from the pre-system.  Unit pairs take the
/// canonical solutions (lam[a,1] = id, rho[a,1] = rho1[a], lam[1,a] =
/// lambda1[a], rho[1,a] = id); the chooser picks one solution per non-unit
/// pair, defaulting to the enumeration's first.  The chosen family must
/// pass the delta conditions, and the assembled system is re-validated.
inline LrSystem lift(const PreLrSystem& pre, Chooser chooser = {},
                     long long cap = 1000000) {
  int n = pre.skeleton.order;
  int e = pre.unit();
  SolutionFamily fam{PairMaps(n, std::vector<IndexMap>(n)),
                     PairMaps(n, std::vector<IndexMap>(n))};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      SolutionPair s{a, b, {}, {}};
      if (b == e) {
        s.lam.resize(pre.index_sizes[a]);
        for (int i = 0; i < pre.index_sizes[a]; ++i) s.lam[i] = i;
        s.rho = pre.rho1[a];
      } else if (a == e) {
        s.lam = pre.lambda1[b];
        s.rho.resize(pre.index_sizes[b]);
        for (int i = 0; i < pre.index_sizes[b]; ++i) s.rho[i] = i;
      } else {
        auto sols = solve_pairs(pre, a, b, cap);
        s = chooser ? chooser(a, b, sols) : sols.front();
        s.a = a;
        s.b = b;
      }
      if (!is_solution(pre, s))
        throw Mismatch("chosen maps at (" + std::to_string(a) + "," +
                       std::to_string(b) + ") are not a solution");
      fam.lambda[a][b] = std::move(s.lam);
      fam.rho[a][b] = std::move(s.rho);
    }
  DeltaReport rep =
      check_natural_solutions(pre, DeltaMode::given, fam, cap);
  if (!rep.ok) throw NaturalSolutionsFail(std::move(rep));
  LrSystem out{pre.skeleton, pre.index_sizes, std::move(fam.lambda),
               std::move(fam.rho)};
  return make_system(std::move(out));
}

// ---------------------------------------------------------------------------
// Pullback completion

struct PullbackPair {
  int a, b;
  std::vector<std::pair<int, int>> members;  // {(x,y) : rho1[a](x) = lambda1[b](y)}
  IndexMap lambda1, rho1;  // induced maps P[ab] -> I via the projections
};

struct PullbackCompletion {
  std::vector<std::vector<PullbackPair>> pairs;  // [a][b]
};

/// P[ab] with its projections is the finest possible solution target: any
/// solution factors through it (see factor_map).  Members are enumerated
/// in (x,y)-lexicographic order.
inline PullbackCompletion pullback_completion(const PreLrSystem& pre) {
  int n = pre.skeleton.order;
  PullbackCompletion out;
  out.pairs.resize(n);
  for (int a = 0; a < n; ++a) {
    out.pairs[a].reserve(n);
    for (int b = 0; b < n; ++b) {
      PullbackPair p{a, b, {}, {}, {}};
      for (int x = 0; x < pre.index_sizes[a]; ++x)
        for (int y = 0; y < pre.index_sizes[b]; ++y)
          if (pre.rho1[a][x] == pre.lambda1[b][y]) {
            p.members.push_back({x, y});
            p.lambda1.push_back(pre.lambda1[a][x]);
            p.rho1.push_back(pre.rho1[b][y]);
          }
      out.pairs[a].push_back(std::move(p));
    }
  }
  return out;
}

/// The factor map I[ab] -> P[ab], i |-> (lam(i), rho(i)), as indices into
/// members.  (gamma') for the solution is exactly the statement that every
/// image lies in P[ab].
inline IndexMap factor_map(const PullbackPair& p, const SolutionPair& sol) {
  IndexMap out(sol.lam.size());
  for (size_t i = 0; i < sol.lam.size(); ++i) {
    std::pair<int, int> xy{sol.lam[i], sol.rho[i]};
    auto it = std::find(p.members.begin(), p.members.end(), xy);
    if (it == p.members.end())
      throw Mismatch("solution image escapes the pullback at index " +
                     std::to_string(i));
    out[i] = static_cast<int>(it - p.members.begin());
  }
  return out;
}

}  // namespace lrs
