#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "fairkc/core.hpp"
#include "fairkc/instances.hpp"
#include "helpers.hpp"

using namespace fairkc;
using namespace fairkc::testing;

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(Instance::from_matrix({0, 1, 2, 0}, {0, 1}, 2), InvalidInstance);
  CHECK_THROWS_AS(Instance::from_matrix({1, 1, 1, 0}, {0, 1}, 2), InvalidInstance);
  CHECK_THROWS_AS(Instance::from_matrix({0, -1, -1, 0}, {0, 1}, 2), InvalidInstance);
  CHECK_THROWS_AS(Instance::from_matrix({0, 1, 1, 0}, {0, 0}, 2), InvalidInstance);
  CHECK_THROWS_AS(Instance::from_matrix({0, 1, 1, 0}, {0, 2}, 2), InvalidInstance);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Instance::from_matrix({0, inf, inf, 0}, {0, 1}, 2), InvalidInstance);
  // Coinciding distinct points are allowed.
  const auto inst = Instance::from_matrix({0, 0, 0, 0}, {0, 1}, 2);
  CHECK(inst.n() == 2);
  CHECK(inst.satisfies_triangle_inequality());
  const auto bad = Instance::from_matrix({0, 1, 5, 1, 0, 1, 5, 1, 0}, {0, 1, 0}, 2);
  CHECK_FALSE(bad.satisfies_triangle_inequality());
  CHECK(bad.triangle_slack() == doctest::Approx(3.0));
}

TEST_CASE("cost") {
  const auto inst = Instance::from_matrix({0, 5, 5, 0}, {0, 1}, 2);
  CHECK(cost(inst, Solution{{0, 1}, {0, 1}}) == 0.0);
  CHECK(cost(inst, Solution{{0}, {0, 0}}) == 5.0);
  const auto comm = gen_l_community(2, 4, 1.0, CommunityPattern::kAlternating);
  Solution sol{{0, 4}, {0, 0, 0, 0, 4, 4, 4, 4}};
  CHECK(cost(comm, sol) == 0.0);
}

TEST_CASE("gf_violation examples") {
  const auto inst = coinciding({0, 0, 1, 1}, 2);
  const auto half = GFBounds::uniform(2, 0.5, 0.5);
  CHECK(gf_violation(inst, half, Solution{{0}, {0, 0, 0, 0}}) == 0.0);

  const auto blue = coinciding({0, 0, 0, 0, 1}, 2);
  Solution all_blue{{0, 4}, {0, 0, 0, 0, 4}};
  // Cluster of 4 blues: red needs 0.5 * 4 = 2.
  CHECK(gf_violation(blue, half, all_blue) == doctest::Approx(2.0));

  // Clusters of 2 and 5 blues with red share 0.25: violations 0.5 and 1.25.
  const auto seven = coinciding({0, 0, 0, 0, 0, 0, 0, 1}, 2);
  GFBounds quarter{{0.75, 0.25}, {0.75, 0.25}};
  Solution two{{0, 2, 7}, {0, 0, 2, 2, 2, 2, 2, 7}};
  CHECK(gf_violation(seven, quarter, two) == doctest::Approx(1.25));
}

TEST_CASE("empty clusters do not count") {
  const auto inst = coinciding({0, 0, 1, 1}, 2);
  const auto half = GFBounds::uniform(2, 0.5, 0.5);
  Solution sol{{0, 1}, {0, 0, 0, 0}};
  CHECK(gf_violation(inst, half, sol) == 0.0);
  CHECK(sol.inactive_centers() == std::vector<int>{1});
  CHECK(sol.active_centers() == std::vector<int>{0});
}

TEST_CASE("ds_violation examples") {
  const auto inst = coinciding({0, 0, 1, 1, 1}, 2);
  DSBounds ones{{1, 1}, {5, 5}, 5};
  CHECK(ds_violation(Solution{{0, 2}, {0, 0, 2, 2, 2}}, ones, inst) == 0);
  DSBounds two_one{{2, 1}, {5, 5}, 5};
  CHECK(ds_violation(Solution{{0, 2, 3}, {0, 0, 2, 3, 3}}, two_one, inst) == 1);
  // A blue center with an empty cluster leaves blue short.
  CHECK(ds_violation(Solution{{0, 2}, {2, 2, 2, 2, 2}}, ones, inst) == 1);
  DSBounds upper{{0, 0}, {5, 1}, 5};
  CHECK(ds_violation(Solution{{2, 3, 4}, {2, 2, 2, 3, 4}}, upper, inst) == 2);
}

TEST_CASE("pof") {
  CHECK(pof(2.0, 1.0) == 2.0);
  CHECK(std::isinf(pof(1.0, 0.0)));
  CHECK(pof(0.0, 0.0) == 1.0);
}

TEST_CASE("bounds") {
  const auto inst = coinciding({0, 0, 0, 1}, 2);
  const auto g = GFBounds::from_delta(inst, 0.2);
  CHECK(g.beta[0] == doctest::Approx(0.6));
  CHECK(g.alpha[0] == doctest::Approx(0.9));
  CHECK(g.beta[1] == doctest::Approx(0.2));
  CHECK(g.alpha[1] == doctest::Approx(0.3));
  CHECK_THROWS(GFBounds::uniform(2, 0.6, 0.5).validate(2));
  CHECK_THROWS(GFBounds::uniform(2, 0.0, 0.5).validate(2));
  const auto big = coinciding({0, 0, 0, 0, 0, 0, 0, 1, 1, 1}, 2);
  const auto d = DSBounds::from_theta(big, 4, 0.8);
  CHECK(d.k_lo == std::vector<int>{3, 1});  // ceil(2.24), ceil(0.96)
  CHECK(d.k_hi == std::vector<int>{4, 4});
  // theta * r * k exactly integral is not bumped by rounding noise.
  const auto even = coinciding({0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 2);
  CHECK(DSBounds::from_theta(even, 10, 0.6).k_lo == std::vector<int>{3, 3});
  CHECK_THROWS(DSBounds({{2, 0}, {1, 1}, 2}).validate(big));
  CHECK_THROWS(DSBounds({{2, 2}, {4, 4}, 3}).validate(big));
  CHECK_THROWS(DSBounds({{0, 4}, {4, 4}, 4}).validate(big));
}

TEST_CASE("solution validation") {
  const auto inst = coinciding({0, 1, 1}, 2);
  CHECK_THROWS(Solution({0}, {0, 0}).validate(inst));
  CHECK_THROWS(Solution({0}, {0, 1, 0}).validate(inst));
  CHECK_NOTHROW(Solution({0, 2}, {0, 2, 2}).validate(inst));
  Solution s{{2, 0}, {0, 2, 2}};
  CHECK(s.clusters() == std::vector<std::vector<int>>{{1, 2}, {0}});
}

TEST_CASE("fractional assignment") {
  using E = FractionalAssignment::Entry;
  CHECK_THROWS(FractionalAssignment({0, 1}, {{E{0, 0.5}, E{1, 0.4}}}));
  CHECK_THROWS(FractionalAssignment({0, 1}, {{E{0, 1.1}, E{1, -0.1}}}));
  FractionalAssignment x({0, 1}, {{E{1, 0.25}, E{0, 0.75}}, {E{0, 1.0 + 1e-13}, E{1, -1e-13}}});
  CHECK(x.value(0, 0) == 0.75);
  CHECK(x.value(1, 1) == 0.0);
  CHECK(x.rows()[1].size() == 1);
  const auto inst = coinciding({0, 1}, 2);
  const auto mass = x.center_color_mass(inst);
  CHECK(mass[0][0] == 0.75);
  CHECK(mass[0][1] == doctest::Approx(1.0));
  CHECK(x.center_mass()[1] == 0.25);
}

TEST_CASE("nearest-center assignment") {
  const auto inst = line_instance({0, 1, 2, 3, 4}, {0, 1, 0, 1, 0}, 2);
  const std::vector<int> centers{4, 0};
  const auto a = nearest_center_assignment(inst, centers);
  CHECK(a == std::vector<int>{0, 0, 4, 4, 4});  // point 2 ties, earliest center wins
  // Coinciding centers still serve themselves.
  const auto c = coinciding({0, 1, 0}, 2);
  const std::vector<int> cc{0, 1};
  CHECK(nearest_center_assignment(c, cc) == std::vector<int>{0, 1, 0});
}

TEST_CASE("property: gf_violation monotone under widening") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + trial % 3;
    const int n = 6 + static_cast<int>(rng() % 20);
    std::vector<int> colors(n);
    for (int j = 0; j < n; ++j) colors[j] = j < m ? j : static_cast<int>(rng() % m);
    const auto inst = coinciding(colors, m);
    const int k = 1 + static_cast<int>(rng() % 4);
    Solution sol;
    for (int c = 0; c < k; ++c) sol.centers.push_back(c);
    for (int j = 0; j < n; ++j) sol.assign.push_back(static_cast<int>(rng() % k));
    std::uniform_real_distribution<double> u(0.05, 0.5);
    GFBounds tight, wide;
    for (int h = 0; h < m; ++h) {
      const double b = u(rng);
      const double a = std::min(1.0, b + u(rng));
      tight.beta.push_back(b);
      tight.alpha.push_back(a);
      wide.beta.push_back(b * u(rng) * 2);
      wide.alpha.push_back(std::min(1.0, a + u(rng)));
      wide.beta[h] = std::min(wide.beta[h], b);
    }
    CHECK(gf_violation(inst, wide, sol) <= gf_violation(inst, tight, sol) + 1e-12);
  }
}

TEST_CASE("property: merging exactly fair clusters stays exactly fair") {
  std::mt19937_64 rng(5);
  const GFBounds g{{0.2, 0.4}, {0.4, 0.8}};  // color 1 between 40% and 80%
  int checked = 0;
  while (checked < 300) {
    std::vector<int> sizes(2), reds(2);
    bool ok = true;
    for (int c = 0; c < 2; ++c) {
      sizes[c] = 1 + static_cast<int>(rng() % 12);
      reds[c] = static_cast<int>(rng() % (sizes[c] + 1));
      const std::vector<int> counts{sizes[c] - reds[c], reds[c]};
      if (cluster_gf_violation(counts, g) != 0.0) ok = false;
    }
    if (!ok) continue;
    ++checked;
    const std::vector<int> merged{sizes[0] + sizes[1] - reds[0] - reds[1], reds[0] + reds[1]};
    CHECK(cluster_gf_violation(merged, g) == 0.0);
  }
}

TEST_CASE("property: cost invariant under center re-indexing, nearest is optimal") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> props{0.5, 0.5};
    const auto inst = gen_random(15, 2, 2, props, trial);
    std::vector<int> centers{0, 3, 7};
    Solution sol{centers, nearest_center_assignment(inst, centers)};
    auto perm = centers;
    std::shuffle(perm.begin(), perm.end(), rng);
    Solution re{perm, sol.assign};
    CHECK(cost(inst, re) == cost(inst, sol));
    Solution other{centers, {}};
    for (int j = 0; j < inst.n(); ++j) other.assign.push_back(centers[rng() % 3]);
    CHECK(cost(inst, sol) <= cost(inst, other));
  }
}

TEST_CASE("evaluate collects everything") {
  const auto inst = coinciding({0, 0, 1, 1}, 2);
  const auto rep = evaluate(inst, Solution{{0, 2, 3}, {0, 0, 2, 2}},
                            GFBounds::uniform(2, 0.5, 0.5), DSBounds{{1, 1}, {3, 3}, 3});
  CHECK(rep.gf_rho == doctest::Approx(1.0));
  CHECK(rep.ds_violation == 0);
  CHECK(rep.inactive_centers == std::vector<int>{3});
  CHECK(rep.cost == 0.0);
}
