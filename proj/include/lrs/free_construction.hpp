#pragma once

// The free construction: starting from per-generator index sets I[x] and
// maps lambda[x], rho[x] : I[x] -> I, every word w = x_1...x_k over the
// generators gets the index set
//
//   I[w] = { (v_1..v_k) : rho[x_j](v_j) = lambda[x_{j+1}](v_{j+1}) }
//
// of chain-compatible sequences, with lambda[w] reading the first
// coordinate through lambda[x_1] and rho[w] the last through rho[x_k].
// Coordinate restriction to a factorization w = w1 w2 solves the pair
// equations, so the word structure lifts to a full system on a truncated
// word monoid (completed with an absorbing zero for over-long products).
//
// Applied to the unital extension S^1 of a system (generators = original
// elements, I = the singleton I[1]), this produces the word system whose
// product maps onto H^[S^1] for every base H; verify_divide checks that
// statement, and the resulting division chain, at a bounded word length.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrs/lr_product.hpp"
#include "lrs/lr_system.hpp"
#include "lrs/pre_system.hpp"
#include "lrs/semigroup.hpp"

namespace lrs {

struct TruncatedFreeMonoid {
  int generators = 0;
  int max_len = 0;
  std::vector<std::vector<int>> words;  // length then lex; words[0] is the empty word
  std::map<std::vector<int>, int> ids;

  int id_of(const std::vector<int>& w) const {
    auto it = ids.find(w);
    if (it == ids.end()) throw OutOfRange("word not in truncated monoid");
    return it->second;
  }

  /// Concatenation, or nullopt when the result exceeds max_len.
  std::optional<int> concat(int i, int j) const {
    const auto& u = words[i];
    const auto& v = words[j];
    if (static_cast<int>(u.size() + v.size()) > max_len) return std::nullopt;
    std::vector<int> w = u;
    w.insert(w.end(), v.begin(), v.end());
    return ids.at(w);
  }
};

inline TruncatedFreeMonoid truncated_free_monoid(int generators, int max_len,
                                                 long long cap = 100000) {
  if (generators < 1 || max_len < 0)
    throw OutOfRange("need generators >= 1 and max_len >= 0");
  TruncatedFreeMonoid m{generators, max_len, {}, {}};
  m.words.push_back({});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<int> w(len, 0);
    while (true) {
      m.words.push_back(w);
      if (static_cast<long long>(m.words.size()) > cap)
        throw CapExceeded("truncated word monoid exceeds cap");
      int p = len - 1;
      while (p >= 0 && ++w[p] == generators) w[p--] = 0;
      if (p < 0) break;
    }
  }
  for (size_t i = 0; i < m.words.size(); ++i)
    m.ids[m.words[i]] = static_cast<int>(i);
  return m;
}

struct FreeGenData {
  int base_size = 0;             // |I|
  std::vector<int> gen_sizes;    // |I[x]| per generator
  std::vector<IndexMap> lambda;  // lambda[x] : I[x] -> I
  std::vector<IndexMap> rho;     // rho[x]   : I[x] -> I
};

struct FreeSystem {
  TruncatedFreeMonoid base;
  FreeGenData gen;
  bool even_freer = false;  // full products instead of chain sequences
  // Per word id: the sequences of I[w] in lexicographic order, and the
  // end-reading maps into I.  The empty word holds the base points
  // themselves (as length-1 entries), with identity maps.
  std::vector<std::vector<std::vector<int>>> word_index;
  std::vector<IndexMap> word_lambda, word_rho;
  std::vector<std::map<std::vector<int>, int>> seq_ids;
  bool chains_ok = true;
  bool split_ok = true;
  bool projections_valid = true;  // fails in even_freer mode unless |I| = 1

  int size_of(int w) const { return static_cast<int>(word_index[w].size()); }

  int seq_id(int w, const std::vector<int>& s) const {
    auto it = seq_ids[w].find(s);
    if (it == seq_ids[w].end())
      throw OutOfRange("sequence not in I[w] for word " + std::to_string(w));
    return it->second;
  }
};

namespace detail {

/// Coordinate restriction of sequence `s` of word w = w1 w2 to the two
/// sides, as ids into I[w1], I[w2].  An empty side restricts to the
/// matching boundary value of I (the empty word's index set is I itself).
inline std::pair<int, int> split_ids(const FreeSystem& fs, int w1, int w2,
                                     int w, int sid) {
  const auto& s = fs.word_index[w][sid];
  size_t len1 = fs.base.words[w1].size();
  size_t len2 = fs.base.words[w2].size();
  int left, right;
  if (len1 == 0) {
    left = fs.word_lambda[w][sid];
  } else {
    std::vector<int> prefix(s.begin(), s.begin() + len1);
    left = fs.seq_id(w1, prefix);
  }
  if (len2 == 0) {
    right = fs.word_rho[w][sid];
  } else {
    std::vector<int> suffix(s.end() - len2, s.end());
    right = fs.seq_id(w2, suffix);
  }
  return {left, right};
}

}  // namespace detail

/// Enumerates every I[w], computes lambda[w], rho[w], and verifies the
/// stored structure: chain membership, split invariance of the end
/// readings across every factorization, and the pair equations for the
/// coordinate-restriction solutions (recorded in projections_valid).
inline FreeSystem build_free_system(const FreeGenData& gen, int max_len,
                                    bool even_freer = false,
                                    long long cap = 100000) {
  int g = static_cast<int>(gen.gen_sizes.size());
  if (gen.base_size < 0) throw OutOfRange("negative base size");
  if (static_cast<int>(gen.lambda.size()) != g ||
      static_cast<int>(gen.rho.size()) != g)
    throw ArityMismatch("generator map arrays must match generator count");
  for (int x = 0; x < g; ++x) {
    if (static_cast<int>(gen.lambda[x].size()) != gen.gen_sizes[x] ||
        static_cast<int>(gen.rho[x].size()) != gen.gen_sizes[x])
      throw ArityMismatch("generator map length mismatch at " +
                          std::to_string(x));
    for (const IndexMap* m : {&gen.lambda[x], &gen.rho[x]})
      for (int v : *m)
        if (v < 0 || v >= gen.base_size)
          throw OutOfRange("generator map value outside I");
  }

  FreeSystem fs{truncated_free_monoid(g, max_len, cap), gen, even_freer,
                {},   {},    {},     {}, true, true, true};
  int nw = static_cast<int>(fs.base.words.size());
  fs.word_index.resize(nw);
  fs.word_lambda.resize(nw);
  fs.word_rho.resize(nw);
  fs.seq_ids.resize(nw);

  long long stored = 0;
  for (int w = 0; w < nw; ++w) {
    const auto& word = fs.base.words[w];
    if (word.empty()) {
      for (int v = 0; v < gen.base_size; ++v) {
        fs.word_index[w].push_back({v});
        fs.word_lambda[w].push_back(v);
        fs.word_rho[w].push_back(v);
      }
    } else {
      std::vector<int> seq(word.size());
      // Depth-first in ascending coordinate order gives lex order.
      std::function<void(size_t)> extend = [&](size_t pos) {
        if (pos == word.size()) {
          fs.word_index[w].push_back(seq);
          fs.word_lambda[w].push_back(gen.lambda[word.front()][seq.front()]);
          fs.word_rho[w].push_back(gen.rho[word.back()][seq.back()]);
          return;
        }
        for (int v = 0; v < gen.gen_sizes[word[pos]]; ++v) {
          if (!even_freer && pos > 0 &&
              gen.rho[word[pos - 1]][seq[pos - 1]] != gen.lambda[word[pos]][v])
            continue;
          seq[pos] = v;
          extend(pos + 1);
        }
      };
      extend(0);
    }
    stored += fs.size_of(w);
    if (stored > cap)
      throw CapExceeded("total index-set size exceeds cap");
    for (int i = 0; i < fs.size_of(w); ++i)
      fs.seq_ids[w][fs.word_index[w][i]] = i;
  }

  for (int w = 0; w < nw; ++w) {
    const auto& word = fs.base.words[w];
    if (word.empty()) continue;
    for (int sid = 0; sid < fs.size_of(w); ++sid) {
      const auto& s = fs.word_index[w][sid];
      if (!even_freer)
        for (size_t j = 0; j + 1 < s.size(); ++j)
          if (gen.rho[word[j]][s[j]] != gen.lambda[word[j + 1]][s[j + 1]])
            fs.chains_ok = false;
      for (size_t j = 1; j < word.size(); ++j) {
        std::vector<int> w1(word.begin(), word.begin() + j);
        std::vector<int> w2(word.begin() + j, word.end());
        int id1 = fs.base.id_of(w1), id2 = fs.base.id_of(w2);
        try {
          auto [left, right] = detail::split_ids(fs, id1, id2, w, sid);
          if (fs.word_lambda[id1][left] != fs.word_lambda[w][sid])
            fs.split_ok = false;
          if (fs.word_rho[id2][right] != fs.word_rho[w][sid])
            fs.split_ok = false;
        } catch (const OutOfRange&) {
          fs.split_ok = false;  // a sub-chain failed to be enumerated
        }
      }
    }
  }

  for (int w1 = 0; w1 < nw; ++w1)
    for (int w2 = 0; w2 < nw; ++w2) {
      auto w = fs.base.concat(w1, w2);
      if (!w) continue;
      for (int sid = 0; sid < fs.size_of(*w); ++sid) {
        auto [left, right] = detail::split_ids(fs, w1, w2, *w, sid);
        if (fs.word_lambda[w1][left] != fs.word_lambda[*w][sid] ||
            fs.word_rho[w2][right] != fs.word_rho[*w][sid] ||
            fs.word_rho[w1][left] != fs.word_lambda[w2][right])
          fs.projections_valid = false;
      }
    }
  return fs;
}

// ---------------------------------------------------------------------------
// Completion to a total system on words

/// Words of length <= L plus an absorbing zero for over-long products.
/// Word ids are preserved; the zero is the last id.
inline FiniteSemigroup completed_word_skeleton(
    const TruncatedFreeMonoid& m, const std::vector<std::string>& letters) {
  int nw = static_cast<int>(m.words.size());
  int n = nw + 1, theta = nw;
  Table t(n, std::vector<int>(n, theta));
  for (int i = 0; i < nw; ++i)
    for (int j = 0; j < nw; ++j)
      if (auto k = m.concat(i, j)) t[i][j] = *k;
  std::vector<std::string> labels(n);
  labels[0] = "ε";
  for (int i = 1; i < nw; ++i) {
    std::string lab;
    for (size_t j = 0; j < m.words[i].size(); ++j) {
      if (j) lab += '.';
      lab += letters[m.words[i][j]];
    }
    labels[i] = std::move(lab);
  }
  labels[theta] = "θ";
  return from_table(std::move(t), std::move(labels));
}

struct FreeBundle {
  LrSystem s1;                  // the unital extension the words evaluate into
  FreeSystem fs;
  FiniteSemigroup word_skeleton;  // completed, zero last
  int theta;
  PreLrSystem word_pre;
  SolutionFamily projections;   // coordinate-restriction solutions
  DeltaReport delta;            // given-mode check of that family
  LrSystem word_system;         // assembled and validated
};

/// The word system of a base system: generators are the elements of the
/// original skeleton, index data comes from the unital extension
/// (I = I[1] is a singleton, so chains are unconstrained), and the word
/// structure is assembled from the coordinate-restriction solutions.
inline FreeBundle free_of_system(const LrSystem& sys, int max_len,
                                 bool even_freer = false,
                                 long long cap = 100000) {
  FreeBundle b;
  b.s1 = unital_extension(sys);
  int n = sys.skeleton.order;
  int unit = n;  // adjoined last

  FreeGenData gen;
  gen.base_size = b.s1.index_sizes[unit];
  gen.gen_sizes.assign(sys.index_sizes.begin(), sys.index_sizes.end());
  for (int x = 0; x < n; ++x) {
    gen.lambda.push_back(b.s1.lambda[unit][x]);
    gen.rho.push_back(b.s1.rho[x][unit]);
  }
  b.fs = build_free_system(gen, max_len, even_freer, cap);
  if (!b.fs.projections_valid)
    throw Mismatch("coordinate restrictions are not solutions; cannot lift");

  std::vector<std::string> letters(n);
  for (int x = 0; x < n; ++x) letters[x] = sys.skeleton.label(x);
  b.word_skeleton = completed_word_skeleton(b.fs.base, letters);
  int nw = static_cast<int>(b.fs.base.words.size());
  b.theta = nw;

  b.word_pre.skeleton = b.word_skeleton;
  b.word_pre.base_size = gen.base_size;
  b.word_pre.index_sizes.resize(nw + 1, 0);
  b.word_pre.lambda1.resize(nw + 1);
  b.word_pre.rho1.resize(nw + 1);
  for (int w = 0; w < nw; ++w) {
    b.word_pre.index_sizes[w] = b.fs.size_of(w);
    b.word_pre.lambda1[w] = b.fs.word_lambda[w];
    b.word_pre.rho1[w] = b.fs.word_rho[w];
  }
  b.word_pre = make_pre_system(std::move(b.word_pre));

  int total = nw + 1;
  b.projections.lambda.assign(total, std::vector<IndexMap>(total));
  b.projections.rho.assign(total, std::vector<IndexMap>(total));
  for (int w1 = 0; w1 < nw; ++w1)
    for (int w2 = 0; w2 < nw; ++w2) {
      auto w = b.fs.base.concat(w1, w2);
      if (!w) continue;
      IndexMap lam(b.fs.size_of(*w)), rho(b.fs.size_of(*w));
      for (int sid = 0; sid < b.fs.size_of(*w); ++sid) {
        auto [left, right] = detail::split_ids(b.fs, w1, w2, *w, sid);
        lam[sid] = left;
        rho[sid] = right;
      }
      b.projections.lambda[w1][w2] = std::move(lam);
      b.projections.rho[w1][w2] = std::move(rho);
    }

  b.delta = check_natural_solutions(b.word_pre, DeltaMode::given,
                                    b.projections, cap);
  LrSystem ws{b.word_skeleton, b.word_pre.index_sizes, b.projections.lambda,
              b.projections.rho};
  b.word_system = make_system(std::move(ws));
  return b;
}

// ---------------------------------------------------------------------------
// The canonical transformation words -> S^1

/// Arrow from the S^1 system to the word system: h evaluates a word in
/// S^1 (the empty word to the adjoined unit) and t[w] : I[h(w)] -> I[w]
/// rebuilds a compatible sequence coordinate by coordinate.  Undefined at
/// the absorbing zero (whose index set is empty), so this is not a total
/// Transformation; the squares are validated on all defined pairs.
struct FreeTransformation {
  LrSystem source;  // S^1 system
  LrSystem target;  // word system
  int theta;
  std::vector<int> skeleton_hom;     // per word id; -1 at theta
  std::vector<IndexMap> index_maps;  // t[w]; empty at theta
  bool letters_identity = true;      // single letters get the identity map
  bool middle_formulas_agree = true; // both composite formulas coincide
  bool images_chain_compatible = true;
  bool squares_ok = true;
  long long squares_checked = 0;
};

inline FreeTransformation free_transformation(const FreeBundle& b) {
  const LrSystem& s1 = b.s1;
  int unit = s1.skeleton.order - 1;
  int nw = static_cast<int>(b.fs.base.words.size());
  FreeTransformation ft;
  ft.source = s1;
  ft.target = b.word_system;
  ft.theta = b.theta;
  ft.skeleton_hom.assign(nw + 1, -1);
  ft.index_maps.resize(nw + 1);

  for (int w = 0; w < nw; ++w) {
    const auto& word = b.fs.base.words[w];
    int m = static_cast<int>(word.size());
    // prefix[j] = product of the first j letters, suffix[j] = product of
    // the letters from position j on (both the unit when empty).
    std::vector<int> prefix(m + 1, unit), suffix(m + 2, unit);
    for (int j = 1; j <= m; ++j)
      prefix[j] = s1.skeleton.at(prefix[j - 1], word[j - 1]);
    for (int j = m; j >= 1; --j)
      suffix[j] = s1.skeleton.at(word[j - 1], suffix[j + 1]);
    int hw = prefix[m];
    ft.skeleton_hom[w] = hw;

    IndexMap t(s1.index_sizes[hw]);
    for (int v = 0; v < s1.index_sizes[hw]; ++v) {
      std::vector<int> seq(m);
      if (m == 1) {
        seq[0] = v;
        if (s1.lambda[word[0]][unit][v] != v ||
            s1.rho[unit][word[0]][v] != v)
          ft.letters_identity = false;
      } else if (m >= 2) {
        seq[0] = s1.lambda[word[0]][suffix[2]][v];
        seq[m - 1] = s1.rho[prefix[m - 1]][word[m - 1]][v];
        for (int j = 2; j <= m - 1; ++j) {
          int via_left =
              s1.rho[prefix[j - 1]][word[j - 1]]
                    [s1.lambda[prefix[j]][suffix[j + 1]][v]];
          int via_right =
              s1.lambda[word[j - 1]][suffix[j + 1]]
                       [s1.rho[prefix[j - 1]][suffix[j]][v]];
          if (via_left != via_right) ft.middle_formulas_agree = false;
          seq[j - 1] = via_left;
        }
      }
      if (m == 0) {
        t[v] = v;  // I is the empty word's own index set
      } else {
        try {
          t[v] = b.fs.seq_id(w, seq);
        } catch (const OutOfRange&) {
          ft.images_chain_compatible = false;
          t[v] = 0;
        }
      }
    }
    ft.index_maps[w] = std::move(t);
  }

  for (int w1 = 0; w1 < nw; ++w1)
    for (int w2 = 0; w2 < nw; ++w2) {
      auto w = b.fs.base.concat(w1, w2);
      if (!w) continue;
      ++ft.squares_checked;
      int h1 = ft.skeleton_hom[w1], h2 = ft.skeleton_hom[w2];
      int h12 = s1.skeleton.at(h1, h2);
      for (int v = 0; v < s1.index_sizes[h12]; ++v) {
        if (ft.index_maps[w1][s1.lambda[h1][h2][v]] !=
            b.word_system.lambda[w1][w2][ft.index_maps[*w][v]])
          ft.squares_ok = false;
        if (ft.index_maps[w2][s1.rho[h1][h2][v]] !=
            b.word_system.rho[w1][w2][ft.index_maps[*w][v]])
          ft.squares_ok = false;
      }
    }
  return ft;
}

inline FreeTransformation free_transformation(const LrSystem& sys,
                                              int max_len,
                                              long long cap = 100000) {
  return free_transformation(free_of_system(sys, max_len, false, cap));
}

// ---------------------------------------------------------------------------
// The division theorem at bounded length

struct DivideReport {
  int word_product_order = 0;
  int codomain_order = 0;   // |H^[S^1]|
  int defined_elements = 0; // word-product elements off the zero
  bool hom_ok = false;
  long long pairs_checked = 0;
  bool surjectivity_checked = false;
  bool surjective = false;  // onto H^[S^1], witnessed by short words
  int image_size = 0;       // image of all defined elements
  bool embed_ok = false;    // H^[S] embeds into H^[S^1]
  bool sh_chain_ok = false; // H^[S] = image of a subsemigroup of H^[S^1]
};

/// Builds the word-side product, maps (x, w) |-> (x o t[w], h(w)), and
/// checks: the homomorphism equation on every pair whose product stays
/// within the length bound; surjectivity onto H^[S^1] (already witnessed
/// by the empty word and single letters); and the division chain, i.e.
/// the embedded copy of H^[S] is a subsemigroup of the surjection's
/// codomain mapping onto H^[S].
inline DivideReport verify_divide(const LrSystem& sys,
                                  const FiniteSemigroup& base, int max_len,
                                  bool even_freer = false,
                                  long long product_cap = 4096) {
  FreeBundle b = free_of_system(sys, max_len, even_freer);
  FreeTransformation ft = free_transformation(b);

  ProductSemigroup p1 = build_product(base, b.s1, product_cap);
  ProductSemigroup pw = build_product(base, b.word_system, product_cap);

  DivideReport rep;
  rep.word_product_order = pw.semigroup.order;
  rep.codomain_order = p1.semigroup.order;

  std::vector<int> image(pw.semigroup.order, -1);
  for (int id = 0; id < pw.semigroup.order; ++id) {
    const ProductElement& e = pw.elements[id];
    if (e.skel == b.theta) continue;
    int hw = ft.skeleton_hom[e.skel];
    ProductElement img{hw, std::vector<int>(b.s1.index_sizes[hw])};
    for (size_t j = 0; j < img.tuple.size(); ++j)
      img.tuple[j] = e.tuple[ft.index_maps[e.skel][j]];
    image[id] = p1.id_of(img);
    ++rep.defined_elements;
  }

  rep.hom_ok = true;
  for (int p = 0; p < pw.semigroup.order; ++p) {
    if (image[p] < 0) continue;
    for (int q = 0; q < pw.semigroup.order; ++q) {
      if (image[q] < 0) continue;
      int pq = pw.semigroup.at(p, q);
      if (image[pq] < 0) continue;  // product fell past the length bound
      ++rep.pairs_checked;
      if (image[pq] != p1.semigroup.at(image[p], image[q]))
        rep.hom_ok = false;
    }
  }

  std::vector<bool> covered(p1.semigroup.order, false);
  std::vector<bool> short_covered(p1.semigroup.order, false);
  for (int id = 0; id < pw.semigroup.order; ++id) {
    if (image[id] < 0) continue;
    covered[image[id]] = true;
    if (b.fs.base.words[pw.elements[id].skel].size() <= 1)
      short_covered[image[id]] = true;
  }
  for (bool c : covered) rep.image_size += c ? 1 : 0;
  rep.surjectivity_checked = !even_freer;
  if (rep.surjectivity_checked) {
    rep.surjective = true;
    for (bool c : short_covered) rep.surjective = rep.surjective && c;
  }

  // H^[S] -> H^[S^1] along the restriction of S^1 to the original ids.
  std::vector<int> original(sys.skeleton.order);
  for (int i = 0; i < sys.skeleton.order; ++i) original[i] = i;
  auto [sub, emb] = restrict_system(b.s1, original);
  ProductSemigroup ps = build_product(base, sub, product_cap);
  Homomorphism iota = induced_hom(emb, ps, p1);
  rep.embed_ok = is_homomorphism(iota) && is_injective(iota);

  if (rep.embed_ok) {
    std::vector<int> subset = iota.map;
    std::sort(subset.begin(), subset.end());
    std::vector<int> back(p1.semigroup.order, -1);
    for (int i = 0; i < ps.semigroup.order; ++i) back[iota.map[i]] = i;
    try {
      FiniteSemigroup u = subsemigroup(p1.semigroup, subset);
      Homomorphism onto{u, ps.semigroup, std::vector<int>(u.order)};
      for (int i = 0; i < u.order; ++i) onto.map[i] = back[subset[i]];
      rep.sh_chain_ok = rep.hom_ok && rep.surjective &&
                        is_homomorphism(onto) && is_surjective(onto);
    } catch (const NotClosed&) {
      rep.sh_chain_ok = false;
    }
  }
  return rep;
}

}  // namespace lrs
