#include "fairkc/divide.hpp"

#include <algorithm>
#include <string>

namespace fairkc {

DivisionPlan plan_division(std::span<const int> color_counts, int num_centers) {
  if (num_centers < 1) throw InvalidSubset("Divide needs at least one center");
  const int m = static_cast<int>(color_counts.size());
  DivisionPlan plan;
  plan.quota.resize(m);
  plan.surplus.resize(m);
  plan.start.resize(m);
  plan.counts.assign(num_centers, std::vector<int>(m, 0));

  int first_index = 0;
  for (int h = 0; h < m; ++h) {
    const int total = color_counts[h];
    const int low = total / num_centers;
    plan.quota[h] = static_cast<double>(total) / num_centers;
    plan.surplus[h] = total - num_centers * low;
    int remaining = plan.surplus[h];
    int q = first_index;
    plan.start[h] = first_index;
    for (int count = 0; count < num_centers; ++count) {
      if (remaining > 0) {
        plan.counts[q][h] = low + 1;
        --remaining;
        first_index = (first_index + 1) % num_centers;
      } else {
        plan.counts[q][h] = low;
      }
      q = (q + 1) % num_centers;
    }
  }
  return plan;
}

std::vector<int> divide(const Instance& inst, std::span<const int> cluster,
                        int center, std::span<const int> q) {
  if (cluster.empty()) throw InvalidSubset("Divide needs a nonempty cluster");
  if (q.empty()) throw InvalidSubset("Divide needs a nonempty center subset");
  if (std::find(cluster.begin(), cluster.end(), center) == cluster.end()) {
    throw InvalidSubset("center " + std::to_string(center) +
                        " is not in the cluster");
  }
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (std::find(cluster.begin(), cluster.end(), q[a]) == cluster.end()) {
      throw InvalidSubset("point " + std::to_string(q[a]) +
                          " of Q is not in the cluster");
    }
    if (std::find(q.begin(), q.begin() + a, q[a]) != q.begin() + a) {
      throw InvalidSubset("point " + std::to_string(q[a]) +
                          " appears twice in Q");
    }
  }

  std::vector<int> out(cluster.size());
  if (q.size() == 1) {
    std::fill(out.begin(), out.end(), q[0]);
    return out;
  }

  const int m = inst.m();
  // Cluster positions of each color, by ascending point index.
  std::vector<std::vector<int>> by_color(m);
  for (std::size_t pos = 0; pos < cluster.size(); ++pos) {
    by_color[inst.color(cluster[pos])].push_back(static_cast<int>(pos));
  }
  std::vector<int> color_counts(m);
  for (int h = 0; h < m; ++h) {
    std::sort(by_color[h].begin(), by_color[h].end(),
              [&](int a, int b) { return cluster[a] < cluster[b]; });
    color_counts[h] = static_cast<int>(by_color[h].size());
  }

  const auto plan = plan_division(color_counts, static_cast<int>(q.size()));
  for (int h = 0; h < m; ++h) {
    std::size_t next = 0;
    for (std::size_t step = 0; step < q.size(); ++step) {
      const std::size_t slot = (plan.start[h] + step) % q.size();
      for (int c = 0; c < plan.counts[slot][h]; ++c) {
        out[by_color[h][next++]] = q[slot];
      }
    }
  }
  return out;
}

}  // namespace fairkc
