#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <set>
#include <vector>

#include "lrs/iso.hpp"
#include "lrs/lr_product.hpp"
#include "lrs/lr_system.hpp"
#include "lrs/render.hpp"
#include "support/oracles.hpp"

using namespace lrs;

namespace {

const std::vector<std::vector<std::string>> kLzeroGolden = {
    {"00", "11", "00", "11"},
    {"11", "00", "11", "00"},
    {"01", "10", "01", "10"},
    {"10", "01", "10", "01"}};

const std::vector<std::vector<std::string>> kFlipflopGolden = {
    {"0", "1", "00", "11", "01", "10"},
    {"1", "0", "11", "00", "10", "01"},
    {"00", "11", "00", "11", "00", "11"},
    {"11", "00", "11", "00", "11", "00"},
    {"01", "10", "01", "10", "01", "10"},
    {"10", "01", "10", "01", "10", "01"}};

// Decompose a length-3 word of a truncated free semigroup into its letters.
std::array<int, 3> letters_of(const FiniteSemigroup& words, int generators,
                              int w) {
  for (int l1 = 0; l1 < generators; ++l1)
    for (int l2 = 0; l2 < generators; ++l2)
      for (int l3 = 0; l3 < generators; ++l3)
        if (words.at(words.at(l1, l2), l3) == w) return {l1, l2, l3};
  throw Error("not a product of three letters");
}

}  // namespace

TEST_CASE("multiply follows the component formula") {
  FiniteSemigroup z2 = cyclic(2);

  LrSystem ff = flipflop_example();
  ProductElement p = multiply(z2, ff, {1, {0, 1}}, {1, {1, 1}});
  CHECK(p.skel == 1);
  CHECK(p.tuple == std::vector<int>{1, 0});

  LrSystem lz = lzero_example();
  ProductElement q = multiply(z2, lz, {0, {0, 1}}, {0, {1, 1}});
  CHECK(q.tuple == std::vector<int>{1, 0});

  LrSystem e = empty_system(z2);
  ProductElement r = multiply(z2, e, {0, {}}, {1, {}});
  CHECK(r.skel == 1);
  CHECK(r.tuple.empty());

  CHECK_THROWS_AS(multiply(z2, ff, {1, {0}}, {1, {1, 1}}), ArityMismatch);
}

TEST_CASE("componentwise products commute with index substitution") {
  // (x o f) . (y o f) = (x . y) o f for any reindexing f, the identity the
  // whole twisted-product construction leans on.
  for (const FiniteSemigroup& h : {cyclic(2), left_zero(2), cyclic(3)}) {
    std::vector<int> x = {0, 1, h.order - 1}, y = {1, 0, 1};
    for (int f0 = 0; f0 < 3; ++f0)
      for (int f1 = 0; f1 < 3; ++f1) {
        std::vector<int> f = {f0, f1, f1};
        std::vector<int> xy(3);
        for (int i = 0; i < 3; ++i) xy[i] = h.at(x[i], y[i]);
        for (size_t i = 0; i < f.size(); ++i)
          CHECK(h.at(x[f[i]], y[f[i]]) == xy[f[i]]);
      }
  }
}

TEST_CASE("the order-4 product over the one-point skeleton matches its table") {
  ProductSemigroup p = build_product(cyclic(2), lzero_example());
  REQUIRE(p.semigroup.order == 4);
  CHECK(p.semigroup.labels ==
        std::vector<std::string>{"00", "10", "01", "11"});
  CHECK(table_by_labels(p.semigroup, {"00", "11", "01", "10"}) ==
        kLzeroGolden);
  CHECK_FALSE(identity_of(p.semigroup).has_value());
  CHECK_FALSE(oracle::assoc_violation(p.semigroup.table).has_value());
}

TEST_CASE("the order-6 product over the two-element semilattice matches its table") {
  ProductSemigroup p = build_product(cyclic(2), flipflop_example());
  REQUIRE(p.semigroup.order == 6);
  CHECK(p.semigroup.labels ==
        std::vector<std::string>{"0", "1", "00", "10", "01", "11"});
  CHECK(table_by_labels(p.semigroup, {"0", "1", "00", "11", "01", "10"}) ==
        kFlipflopGolden);
  CHECK(p.skeleton_of(0) == 0);
  CHECK(p.skeleton_of(5) == 1);
  CHECK(p.id_of({1, {0, 1}}) == 4);
}

TEST_CASE("product orders follow the size formula") {
  for (const FiniteSemigroup& h : {cyclic(2), semilattice2(), left_zero(2)})
    for (const LrSystem& sys :
         {lzero_example(), flipflop_example(), empty_system(cyclic(3)),
          singleton_system(flip_flop_left()),
          left_action_system(cyclic(2), cyclic(2).table)}) {
      ProductSemigroup p = build_product(h, sys);
      CHECK(p.semigroup.order ==
            oracle::product_order_formula(h.order, sys.index_sizes));
    }
  CHECK_THROWS_AS(build_product(cyclic(2), flipflop_example(), 5),
                  CapExceeded);
}

TEST_CASE("degenerate bases and systems collapse to known semigroups") {
  FiniteSemigroup one = trivial_semigroup();

  for (const LrSystem& sys : {flipflop_example(), lzero_example(),
                              left_action_system(cyclic(3), cyclic(3).table)})
    CHECK(find_isomorphism(build_product(one, sys).semigroup, sys.skeleton)
              .has_value());

  for (const FiniteSemigroup& s : {cyclic(2), flip_flop_left()})
    for (const FiniteSemigroup& h : {cyclic(2), semilattice2()}) {
      CHECK(find_isomorphism(build_product(h, empty_system(s)).semigroup, s)
                .has_value());
      CHECK(find_isomorphism(build_product(h, singleton_system(s)).semigroup,
                             direct_product(h, s))
                .has_value());
    }
}

TEST_CASE("product labels stay unique under collisions") {
  ProductSemigroup p = build_product(cyclic(2), singleton_system(left_zero(2)));
  std::set<std::string> seen(p.semigroup.labels.begin(),
                             p.semigroup.labels.end());
  CHECK(seen.size() == 4);
  for (const auto& l : p.semigroup.labels)
    CHECK(l.find(':') != std::string::npos);

  ProductSemigroup big =
      build_product(full_transformations(3), singleton_system(trivial_semigroup()));
  CHECK(big.semigroup.order == 27);
  std::set<std::string> big_seen(big.semigroup.labels.begin(),
                                 big.semigroup.labels.end());
  CHECK(big_seen.size() == 27);
}

TEST_CASE("product identities exist exactly when predicted") {
  auto ff = unit_of_product(cyclic(2), flipflop_example());
  REQUIRE(ff.has_value());
  CHECK(ff->skel == 0);
  CHECK(ff->tuple == std::vector<int>{0});

  CHECK_FALSE(unit_of_product(cyclic(2), lzero_example()).has_value());

  auto sing = unit_of_product(cyclic(2), singleton_system(cyclic(2)));
  REQUIRE(sing.has_value());
  CHECK(sing->skel == 0);
  CHECK(sing->tuple == std::vector<int>{0});

  // Non-unital system whose table happens to have an identity anyway: the
  // fallback scan finds it.
  auto viaScan = unit_of_product(trivial_semigroup(), lzero_example());
  CHECK(viaScan.has_value());
}

TEST_CASE("invalid candidates yield explicit nonassociative products") {
  LrSystem swap;
  swap.skeleton = trivial_semigroup();
  swap.index_sizes = {2};
  swap.lambda = {{{0, 1}}};
  swap.rho = {{{1, 0}}};

  NonassocWitness w = nonassociativity_witness(swap);
  CHECK(w.cause.cond == Condition::beta);
  CHECK(w.base.order == 259);  // six letters, words up to length three
  CHECK(w.left.skel == w.right.skel);
  CHECK_FALSE(w.left.tuple == w.right.tuple);
  ProductElement xy = multiply(w.base, swap, w.x, w.y);
  CHECK(multiply(w.base, swap, xy, w.z) == w.left);
  ProductElement yz = multiply(w.base, swap, w.y, w.z);
  CHECK(multiply(w.base, swap, w.x, yz) == w.right);

  CHECK_THROWS_AS(nonassociativity_witness(flipflop_example()),
                  NoViolationRecorded);
}

TEST_CASE("a pure gamma failure shows up in the middle letter") {
  LrSystem cand;
  cand.skeleton = trivial_semigroup();
  cand.index_sizes = {2};
  cand.lambda = {{{0, 0}}};
  cand.rho = {{{1, 1}}};
  REQUIRE(check_axioms(cand).size() == 2);

  NonassocWitness w = nonassociativity_witness(cand);
  CHECK(w.cause.cond == Condition::gamma);
  bool differed = false;
  for (size_t i = 0; i < w.left.tuple.size(); ++i) {
    if (w.left.tuple[i] == w.right.tuple[i]) continue;
    differed = true;
    auto l = letters_of(w.base, 6, w.left.tuple[i]);
    auto r = letters_of(w.base, 6, w.right.tuple[i]);
    CHECK(l[0] == r[0]);
    CHECK(l[2] == r[2]);
    CHECK(l[1] != r[1]);
  }
  CHECK(differed);
}

TEST_CASE("the subset reading of a two-element base agrees with multiply") {
  FiniteSemigroup lxor = cyclic(2);
  FiniteSemigroup land = from_table({{0, 0}, {0, 1}});
  FiniteSemigroup lor = semilattice2();
  FiniteSemigroup lproj = left_zero(2);

  CHECK(powerset_product_check(flipflop_example(), lxor).agrees);
  CHECK(powerset_product_check(lzero_example(), land).agrees);
  CHECK(powerset_product_check(singleton_system(semilattice2()), lor).agrees);
  CHECK(powerset_product_check(lzero_example(), lproj).agrees);

  PowersetCheck full = powerset_product_check(flipflop_example(), lxor);
  CHECK(full.elements == 6);
  CHECK(full.pairs == 36);

  CHECK_THROWS_AS(powerset_product_check(lzero_example(), cyclic(3)),
                  Malformed);
}

TEST_CASE("group preservation matches the skeleton-and-unit prediction") {
  FiniteSemigroup z2 = cyclic(2);

  GroupPreservation reg =
      group_preservation_check(z2, left_action_system(z2, z2.table));
  CHECK(reg.predicted);
  CHECK(reg.actual);
  CHECK(reg.matches);

  GroupPreservation ff = group_preservation_check(z2, flipflop_example());
  CHECK_FALSE(ff.skeleton_is_group);
  CHECK_FALSE(ff.actual);
  CHECK(ff.matches);

  GroupPreservation sing =
      group_preservation_check(z2, singleton_system(cyclic(3)));
  CHECK(sing.predicted);
  CHECK(sing.actual);
  CHECK(sing.matches);
  ProductSemigroup p = build_product(z2, singleton_system(cyclic(3)));
  CHECK(find_isomorphism(p.semigroup, direct_product(cyclic(2), cyclic(3)))
            .has_value());
}

TEST_CASE("wreath products coincide with products over action systems") {
  FiniteSemigroup z2 = cyclic(2);
  FiniteSemigroup w = wreath_product(z2, z2);
  ProductSemigroup p = build_product(z2, left_action_system(z2, z2.table));
  CHECK(w == p.semigroup);
  CHECK(w.order == 8);
  CHECK(oracle::group_by_scan(w));
  CHECK_FALSE(is_commutative(w));

  FiniteSemigroup z3 = cyclic(3);
  FiniteSemigroup w32 = wreath_product(z2, z3);
  ProductSemigroup p32 = build_product(z2, left_action_system(z3, z3.table));
  CHECK(w32 == p32.semigroup);
}

TEST_CASE("two-sided wreath products match their action systems") {
  FiniteSemigroup z2 = cyclic(2);
  FiniteSemigroup tw = two_sided_wreath_product(z2, z2);
  ProductSemigroup tp =
      build_product(z2, two_sided_action_system(z2, z2.table, z2.table));
  CHECK(tw == tp.semigroup);
  CHECK(oracle::group_by_scan(tw));

  FiniteSemigroup z3 = cyclic(3);
  Table back(3, std::vector<int>(3)), slash(3, std::vector<int>(3));
  for (int a = 0; a < 3; ++a)
    for (int x = 0; x < 3; ++x) {
      back[a][x] = (x + 3 - a) % 3;   // a\x = a^-1 x
      slash[x][a] = (x + 3 - a) % 3;  // x/a = x a^-1
    }
  FiniteSemigroup tw3 = two_sided_wreath_product(z2, z3);
  ProductSemigroup tp3 =
      build_product(z2, two_sided_action_system(z3, back, slash));
  CHECK(tw3 == tp3.semigroup);

  CHECK_THROWS_AS(two_sided_wreath_product(z2, semilattice2()), Mismatch);
}

TEST_CASE("induced maps on products are verified homomorphisms") {
  FiniteSemigroup z2 = cyclic(2);
  LrSystem ff = flipflop_example();
  LrSystem ext = unital_extension(ff);

  ProductSemigroup small = build_product(z2, ff);
  ProductSemigroup big = build_product(z2, ext);

  auto [sub, emb] = restrict_system(ext, {0, 1});
  REQUIRE(sub == ff);
  Homomorphism inc = induced_hom(emb, small, big);
  CHECK(is_homomorphism(inc));
  CHECK(is_injective(inc));

  Homomorphism idm =
      induced_hom(identity_transformation(ff), small, small);
  for (int i = 0; i < small.semigroup.order; ++i) CHECK(idm.map[i] == i);

  CHECK_THROWS_AS(induced_hom(emb, big, small), Mismatch);
}

TEST_CASE("induced maps respect transformation composition") {
  FiniteSemigroup z2 = cyclic(2);
  LrSystem ff = flipflop_example();
  LrSystem ext1 = unital_extension(ff);
  LrSystem ext2 = unital_extension(ext1);

  auto [s1, t1] = restrict_system(ext2, {0, 1, 2});
  auto [s2, t2] = restrict_system(s1, {0, 1});
  Transformation chain = compose_transformations(t1, t2);

  ProductSemigroup p0 = build_product(z2, ext2);
  ProductSemigroup p1 = build_product(z2, s1);
  ProductSemigroup p2 = build_product(z2, s2);

  Homomorphism f1 = induced_hom(t1, p1, p0);
  Homomorphism f2 = induced_hom(t2, p2, p1);
  Homomorphism fc = induced_hom(chain, p2, p0);
  CHECK(is_homomorphism(fc));
  for (int i = 0; i < p2.semigroup.order; ++i)
    CHECK(fc.map[i] == f1.map[f2.map[i]]);
}
