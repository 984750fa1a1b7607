#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairkc/instances.hpp"
#include "fairkc/solvers.hpp"

using namespace fairkc;

TEST_CASE("l-community patterns") {
  const auto alt = gen_l_community(2, 4, 1.0, CommunityPattern::kAlternating);
  CHECK(alt.n() == 8);
  CHECK(alt.color_counts() == std::vector<int>{4, 4});
  CHECK(alt.d(0, 3) == 0.0);
  CHECK(alt.d(0, 4) == 1.0);
  CHECK(alt.satisfies_triangle_inequality());

  const auto dsv = gen_l_community(3, 4, 1.0, CommunityPattern::kDsVariant);
  CHECK(dsv.m() == 3);
  CHECK(dsv.color_counts() == std::vector<int>{8, 2, 2});

  const auto odd = gen_l_community(3, 4, 2.0, CommunityPattern::kOddMixedLast);
  CHECK(odd.color_counts() == std::vector<int>{6, 6});
  CHECK(odd.color(8) == 0);
  CHECK(odd.color(11) == 1);

  CHECK_THROWS_AS(gen_l_community(3, 3, 1.0, CommunityPattern::kDsVariant), PatternArity);
  CHECK_THROWS_AS(gen_l_community(3, 3, 1.0, CommunityPattern::kOddMixedLast), PatternArity);
  CHECK_NOTHROW(gen_l_community(3, 3, 1.0, CommunityPattern::kAlternating));
  CHECK_THROWS(gen_l_community(1, 4, 1.0, CommunityPattern::kAlternating));
  CHECK_THROWS(gen_l_community(2, 4, 0.0, CommunityPattern::kAlternating));
  CHECK(parse_community_pattern("ds-variant") == CommunityPattern::kDsVariant);
  CHECK_THROWS(parse_community_pattern("zigzag"));
}

TEST_CASE("gonzalez finds the zero-cost solution with k = l") {
  for (int l = 2; l <= 5; ++l) {
    for (auto p : {CommunityPattern::kAlternating, CommunityPattern::kOddMixedLast,
                   CommunityPattern::kDsVariant}) {
      const auto inst = gen_l_community(l, 4, 1.5, p);
      CHECK(inst.satisfies_triangle_inequality());
      CHECK(cost(inst, gonzalez(inst, l)) == 0.0);
    }
  }
}

TEST_CASE("proportional gadget") {
  const double R = 3.0, a = 1.5;
  const auto inst = gen_proportional_gadget(5, 6, R, a);
  CHECK(inst.n() == 12);
  CHECK(inst.color_counts() == std::vector<int>{6, 6});
  CHECK(inst.satisfies_triangle_inequality());
  double same = 0;
  for (int i = 0; i < inst.n(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      if (inst.color(i) == inst.color(j)) same = std::max(same, inst.d(i, j));
      else CHECK(inst.d(i, j) == R);
    }
  }
  CHECK(same == doctest::Approx(2 * R / (4 * a)));
  CHECK(same < R / a);
  CHECK_THROWS(gen_proportional_gadget(4, 6, R, a));
  CHECK_THROWS(gen_proportional_gadget(7, 3, R, a));
  CHECK_NOTHROW(gen_proportional_gadget(7, 4, R, a));
}

TEST_CASE("random instances") {
  const std::vector<double> half{0.5, 0.5};
  const auto a = gen_random(8, 2, 2, half, 7);
  CHECK(a.color_counts() == std::vector<int>{4, 4});
  CHECK(a == gen_random(8, 2, 2, half, 7));
  CHECK_FALSE(a == gen_random(8, 2, 2, half, 8));
  for (int i = 0; i < a.n(); ++i) {
    CHECK(a.d(i, i) == 0.0);
    for (int j = 0; j < a.n(); ++j) CHECK(a.d(i, j) == a.d(j, i));
  }
  const std::vector<double> skew{0.98, 0.01, 0.01};
  const auto b = gen_random(10, 3, 3, skew, 1);
  for (int h = 0; h < 3; ++h) CHECK(b.color_count(h) >= 1);
  CHECK(b.satisfies_triangle_inequality());
  CHECK_THROWS(gen_random(2, 3, 2, skew, 1));
}
