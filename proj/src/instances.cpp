#include "fairkc/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fairkc {

CommunityPattern parse_community_pattern(const std::string& name) {
  if (name == "alternating") return CommunityPattern::kAlternating;
  if (name == "odd-mixed-last") return CommunityPattern::kOddMixedLast;
  if (name == "ds-variant") return CommunityPattern::kDsVariant;
  throw std::invalid_argument("unknown community pattern '" + name + "'");
}

std::string to_string(CommunityPattern pattern) {
  switch (pattern) {
    case CommunityPattern::kAlternating: return "alternating";
    case CommunityPattern::kOddMixedLast: return "odd-mixed-last";
    case CommunityPattern::kDsVariant: return "ds-variant";
  }
  return "?";
}

Instance gen_l_community(int l, int size, double R, CommunityPattern pattern) {
  if (l < 2 || size < 1 || !(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("need l >= 2, size >= 1 and finite R > 0");
  }
  if (pattern != CommunityPattern::kAlternating && size % 2 != 0) {
    throw PatternArity("pattern " + to_string(pattern) +
                       " mixes the last community and needs an even size");
  }
  const int n = l * size;
  std::vector<int> colors(n);
  int m = 2;
  for (int c = 0; c < l; ++c) {
    const bool last = c == l - 1;
    for (int a = 0; a < size; ++a) {
      const bool second_half = a >= size / 2;
      int h = 0;
      switch (pattern) {
        case CommunityPattern::kAlternating:
          h = c % 2;
          break;
        case CommunityPattern::kOddMixedLast:
          h = last ? (second_half ? 1 : 0) : c % 2;
          break;
        case CommunityPattern::kDsVariant:
          h = last ? (second_half ? 2 : 1) : 0;
          m = 3;
          break;
      }
      colors[c * size + a] = h;
    }
  }
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i / size != j / size) dist[static_cast<std::size_t>(i) * n + j] = R;
    }
  }
  return Instance::from_matrix(std::move(dist), std::move(colors), m);
}

Instance gen_proportional_gadget(int k, int group_size, double R, double alpha_ap) {
  if (k < 5) throw std::invalid_argument("gadget needs k >= 5");
  if (!(R > 0.0) || !(alpha_ap >= 1.0)) {
    throw std::invalid_argument("gadget needs R > 0 and alpha_ap >= 1");
  }
  const int locations[2] = {k / 2, (k + 1) / 2};
  if (group_size < locations[1]) {
    throw std::invalid_argument("group_size must cover ceil(k/2) locations");
  }
  const double r = R / (4.0 * alpha_ap);

  // Location (color, index) of every point; color 0 first.
  std::vector<int> colors;
  std::vector<int> where;
  for (int h = 0; h < 2; ++h) {
    for (int loc = 0; loc < locations[h]; ++loc) {
      const int count = group_size / locations[h] + (loc < group_size % locations[h]);
      for (int a = 0; a < count; ++a) {
        colors.push_back(h);
        where.push_back(loc);
      }
    }
  }
  const int n = static_cast<int>(colors.size());
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double d = 0.0;
      if (colors[i] != colors[j]) {
        d = R;
      } else if (where[i] != where[j]) {
        d = (where[i] == 0 || where[j] == 0) ? r : 2.0 * r;
      }
      dist[static_cast<std::size_t>(i) * n + j] = d;
    }
  }
  auto inst = Instance::from_matrix(std::move(dist), std::move(colors), 2);
  if (!inst.satisfies_triangle_inequality()) {
    throw InvalidInstance("gadget breaks the triangle inequality");
  }
  return inst;
}

Instance gen_random(int n, int m, int dim, std::span<const double> proportions,
                    unsigned long long seed) {
  if (m < 1 || n < m || dim < 1) {
    throw std::invalid_argument("need m >= 1, n >= m and dim >= 1");
  }
  if (static_cast<int>(proportions.size()) != m) {
    throw std::invalid_argument("one proportion per color required");
  }
  const double total = std::accumulate(proportions.begin(), proportions.end(), 0.0);
  if (!(total > 0.0) || std::any_of(proportions.begin(), proportions.end(),
                                    [](double p) { return !(p >= 0.0); })) {
    throw std::invalid_argument("proportions must be nonnegative with a positive sum");
  }

  // Largest remainder over the n - m points left after one per color.
  std::vector<int> counts(m, 1);
  const int spare = n - m;
  std::vector<double> remainder(m);
  int handed = 0;
  for (int h = 0; h < m; ++h) {
    const double share = spare * proportions[h] / total;
    counts[h] += static_cast<int>(std::floor(share));
    handed += static_cast<int>(std::floor(share));
    remainder[h] = share - std::floor(share);
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainder[a] > remainder[b]; });
  for (int a = 0; handed < spare; ++a, ++handed) ++counts[order[a % m]];

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> features(n, std::vector<double>(dim));
  for (auto& f : features) {
    for (auto& v : f) v = unit(rng);
  }
  std::vector<int> colors;
  for (int h = 0; h < m; ++h) colors.insert(colors.end(), counts[h], h);
  std::shuffle(colors.begin(), colors.end(), rng);
  return Instance::from_features(std::move(features), std::move(colors), m);
}

}  // namespace fairkc
