#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairkc/divide.hpp"
#include "helpers.hpp"
#include "suites.hpp"

using namespace fairkc;
using namespace fairkc::testing;

TEST_CASE("golden 38-point split") {
  const auto g = run_golden_divide();
  CHECK(g.counts[0] == std::vector<int>{4, 4, 4, 3});
  CHECK(g.counts[1] == std::vector<int>{4, 3, 3, 4});
  CHECK(g.counts[2] == std::vector<int>{2, 3, 2, 2});
  CHECK(g.totals == std::vector<int>{10, 10, 9, 9});
}

TEST_CASE("plan remainders and walk starts") {
  const std::vector<int> counts{15, 14, 9};
  const auto plan = plan_division(counts, 4);
  CHECK(plan.surplus == std::vector<int>{3, 2, 1});
  CHECK(plan.start == std::vector<int>{0, 3, 1});
  CHECK(plan.quota[0] == doctest::Approx(3.75));
}

TEST_CASE("single center takes everything") {
  const auto inst = coinciding({0, 1, 1, 0, 1}, 2);
  const std::vector<int> cluster{4, 2, 0, 1, 3};
  const std::vector<int> q{2};
  CHECK(divide(inst, cluster, 0, q) == std::vector<int>(5, 2));
}

TEST_CASE("uniform split when quotas are whole") {
  const auto inst = coinciding({0, 0, 0, 1, 1, 1}, 2);
  const std::vector<int> cluster{0, 1, 2, 3, 4, 5};
  const std::vector<int> q{0, 1, 3};
  const auto to = divide(inst, cluster, 0, q);
  for (int c : q) {
    int blue = 0, red = 0;
    for (int j = 0; j < 6; ++j) {
      if (to[j] == c) (inst.color(j) == 0 ? blue : red)++;
    }
    CHECK(blue == 1);
    CHECK(red == 1);
  }
}

TEST_CASE("points of a color go out by ascending index") {
  const auto inst = coinciding({0, 0, 0, 0, 0}, 1);
  const std::vector<int> cluster{4, 3, 2, 1, 0};
  const std::vector<int> q{3, 1};
  // Color 0 has 5 points: 3 to the first center in the walk, 2 to the next.
  CHECK(divide(inst, cluster, 0, q) == std::vector<int>{1, 1, 3, 3, 3});
}

TEST_CASE("invalid subsets") {
  const auto inst = coinciding({0, 1, 0}, 2);
  const std::vector<int> cluster{0, 1};
  const std::vector<int> outside{2};
  const std::vector<int> empty;
  const std::vector<int> twice{0, 0};
  CHECK_THROWS_AS(divide(inst, cluster, 0, outside), InvalidSubset);
  CHECK_THROWS_AS(divide(inst, cluster, 0, empty), InvalidSubset);
  CHECK_THROWS_AS(divide(inst, cluster, 0, twice), InvalidSubset);
  CHECK_THROWS_AS(divide(inst, cluster, 2, cluster), InvalidSubset);
  CHECK_THROWS_AS(divide(inst, empty, 0, cluster), InvalidSubset);
}

TEST_CASE("property: divide guarantees") {
  const auto r = divide_suite(300, 17);
  INFO(r.first_failure);
  CHECK(r.ok());
}
