#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "lrs/iso.hpp"
#include "lrs/lr_product.hpp"
#include "lrs/lr_system.hpp"
#include "support/oracles.hpp"

using namespace lrs;

namespace {

bool verifies_as_iso(const FiniteSemigroup& a, const FiniteSemigroup& b,
                     const std::vector<int>& m) {
  std::vector<bool> hit(b.order, false);
  for (int x : m) {
    if (x < 0 || x >= b.order || hit[x]) return false;
    hit[x] = true;
  }
  for (int x = 0; x < a.order; ++x)
    for (int y = 0; y < a.order; ++y)
      if (m[a.at(x, y)] != b.at(m[x], m[y])) return false;
  return true;
}

}  // namespace

TEST_CASE("isomorphism search returns the least bijection and matches brute force") {
  auto self = find_isomorphism(cyclic(2), cyclic(2));
  REQUIRE(self.has_value());
  CHECK(*self == std::vector<int>{0, 1});

  CHECK_FALSE(find_isomorphism(left_zero(2), cyclic(2)).has_value());

  std::vector<FiniteSemigroup> pool = {
      trivial_semigroup(),   cyclic(2),
      cyclic(3),             cyclic(4),
      semilattice2(),        left_zero(2),
      left_zero(3),          flip_flop_left(),
      adjoin_unit(left_zero(2)),
      direct_product(cyclic(2), cyclic(2))};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      auto naive = oracle::iso_by_permutations(a, b);
      auto lib = find_isomorphism(a, b);
      CHECK(naive.has_value() == lib.has_value());
      if (naive && lib) {
        CHECK(*naive == *lib);  // both scan permutations in ascending order
        CHECK(verifies_as_iso(a, b, *lib));
      }
    }

  // Z4 and the Klein four-group have equal order but different structure.
  CHECK_FALSE(
      find_isomorphism(cyclic(4), direct_product(cyclic(2), cyclic(2))));
}

TEST_CASE("isomorphism search respects its order cap") {
  FiniteSemigroup t3 = full_transformations(3);
  CHECK_THROWS_AS(find_isomorphism(t3, t3), OrderCapExceeded);
  FiniteSemigroup z9 = direct_product(cyclic(3), cyclic(3));
  CHECK(find_isomorphism(z9, z9, 16).has_value());
}

TEST_CASE("division witnesses re-verify and match exhaustive search") {
  for (const auto& s : {cyclic(2), semilattice2(), flip_flop_left()}) {
    auto w = divides(s, s);
    REQUIRE(w.has_value());
    CHECK(oracle::closed_subset(s, w->subset));
    CHECK(is_homomorphism(w->onto));
    CHECK(is_surjective(w->onto));
  }

  auto tw = divides(trivial_semigroup(), cyclic(2));
  REQUIRE(tw.has_value());
  CHECK(tw->subset == std::vector<int>{0});

  auto zw = divides(cyclic(2), cyclic(2));
  REQUIRE(zw.has_value());
  CHECK(zw->subset == std::vector<int>{0, 1});
}

TEST_CASE("the three-element flip-flop divides the order-6 product but Z3 does not") {
  ProductSemigroup p = build_product(cyclic(2), flipflop_example());
  REQUIRE(p.semigroup.order == 6);

  auto w = divides(flip_flop_left(), p.semigroup);
  REQUIRE(w.has_value());
  CHECK(w->subset == std::vector<int>{0, 2, 4});
  CHECK(oracle::closed_subset(p.semigroup, w->subset));
  CHECK(is_homomorphism(w->onto));
  CHECK(is_surjective(w->onto));
  CHECK(w->onto.target.table == flip_flop_left().table);

  auto naive = oracle::divides_subset(flip_flop_left(), p.semigroup);
  REQUIRE(naive.has_value());
  CHECK(*naive == w->subset);

  CHECK_FALSE(divides(cyclic(3), p.semigroup).has_value());
  CHECK_FALSE(oracle::divides_subset(cyclic(3), p.semigroup).has_value());
}

TEST_CASE("division search caps") {
  DivisionCaps caps;
  caps.max_t = 8;
  FiniteSemigroup z9 = direct_product(cyclic(3), cyclic(3));
  CHECK_THROWS_AS(divides(z9, z9, caps), CapExceeded);

  caps = DivisionCaps{};
  caps.max_s = 4;
  CHECK_THROWS_AS(divides(cyclic(2), cyclic(6), caps), CapExceeded);
}
