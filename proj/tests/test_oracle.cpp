#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fairkc/instances.hpp"
#include "fairkc/oracle.hpp"
#include "fairkc/solvers.hpp"
#include "suites.hpp"

using namespace fairkc;
using namespace fairkc::testing;

TEST_CASE("community examples") {
  const auto alt = gen_l_community(2, 4, 1.0, CommunityPattern::kAlternating);
  const auto free = brute_force_opt(alt, 2, std::nullopt, std::nullopt);
  REQUIRE(free);
  CHECK(free->cost == 0.0);
  const auto p1 = run_gf_gap();
  CHECK(p1.oracle_cost == 1.0);
  CHECK(p1.gonzalez_cost == 0.0);
  CHECK(std::isinf(p1.pof_value));
  const auto p2 = run_ds_gap(2.5);
  CHECK(p2.ds_cost == 2.5);
  CHECK(p2.free_cost == 0.0);
}

TEST_CASE("infeasible and oversized requests") {
  const auto inst = gen_l_community(2, 2, 1.0, CommunityPattern::kAlternating);
  CHECK_FALSE(brute_force_opt(inst, 2, std::nullopt, DSBounds{{3, 0}, {3, 3}, 3}));
  const auto big = gen_l_community(13, 1, 1.0, CommunityPattern::kAlternating);
  CHECK_THROWS_AS(brute_force_opt(big, 2, std::nullopt, std::nullopt), TooLarge);
  CHECK_THROWS_AS(brute_force_opt(inst, 4, std::nullopt, std::nullopt), TooLarge);
}

TEST_CASE("returned solutions meet the constraints") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 15; ++t) {
    const auto s = random_setup(rng, 5, 9, 3, 3);
    const auto opt = brute_force_opt(s.inst, s.k, s.gfb, s.dsb, 0.5);
    if (!opt) continue;
    CHECK(opt->solution.inactive_centers().empty());
    CHECK(static_cast<int>(opt->solution.centers.size()) <= s.k);
    CHECK(gf_violation(s.inst, s.gfb, opt->solution) <= 0.5 + 1e-9);
    CHECK(ds_violation(opt->solution, s.dsb, s.inst) == 0);
    CHECK(cost(s.inst, opt->solution) == opt->cost);
  }
}

TEST_CASE("property: oracle is a floor and monotone in rho") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto s = random_setup(rng, 6, 10, 2, 3);
    const auto free = brute_force_opt(s.inst, s.k, std::nullopt, std::nullopt);
    REQUIRE(free);
    CHECK(free->cost <= cost(s.inst, gonzalez(s.inst, s.k)));
    const auto ds = brute_force_opt(s.inst, s.k, std::nullopt, s.dsb);
    REQUIRE(ds);
    CHECK(ds->cost <= cost(s.inst, alg_ds(s.inst, s.dsb)));
    double prev = std::numeric_limits<double>::infinity();
    for (double rho : {0.0, 0.5, 1.0, 2.0}) {
      const auto g = brute_force_opt(s.inst, s.k, s.gfb, std::nullopt, rho);
      const double c = g ? g->cost : std::numeric_limits<double>::infinity();
      CHECK(c <= prev);
      prev = c;
    }
    // alg_gf output has violation <= 2, so the rho = 2 oracle is below it.
    CHECK(prev <= cost(s.inst, alg_gf(s.inst, s.k, s.gfb)));
  }
}

TEST_CASE("enumeration visits every all-active solution") {
  const auto inst = gen_l_community(2, 2, 1.0, CommunityPattern::kAlternating);
  int count = 0;
  for_each_solution(inst, 2, [&](const Solution& sol) {
    CHECK(sol.inactive_centers().empty());
    ++count;
  });
  // 4 singletons, 6 pairs with 2^4 - 2 surjective assignments each.
  CHECK(count == 4 + 6 * 14);
}
