#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fairkc/core.hpp"

namespace fairkc::testing {

// Points on a line at the given coordinates.
inline Instance line_instance(const std::vector<double>& xs,
                              const std::vector<int>& colors, int m) {
  std::vector<std::vector<double>> f;
  for (double x : xs) f.push_back({x});
  return Instance::from_features(f, colors, m);
}

// Colors of `points`, counted per color.
inline std::vector<int> color_counts_of(const Instance& inst,
                                        const std::vector<int>& points) {
  std::vector<int> c(inst.m(), 0);
  for (int j : points) ++c[inst.color(j)];
  return c;
}

// Instance whose points all coincide at the origin.
inline Instance coinciding(const std::vector<int>& colors, int m) {
  const auto n = colors.size();
  return Instance::from_matrix(std::vector<double>(n * n, 0.0), colors, m);
}

inline int floor_div(int a, int b) { return a / b; }
inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace fairkc::testing
