#include "fairkc/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace fairkc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int population(const Instance& inst, int k) {
  if (k < 1 || k > inst.n()) {
    throw std::invalid_argument("k must lie in [1, n], got " + std::to_string(k));
  }
  return (inst.n() + k - 1) / k;
}

double ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? kInf : 1.0;
}

}  // namespace

double neighborhood_radius(const Instance& inst, int k, int j) {
  const int t = population(inst, k);
  std::vector<double> row(inst.n());
  for (int i = 0; i < inst.n(); ++i) row[i] = inst.d(j, i);
  std::nth_element(row.begin(), row.begin() + (t - 1), row.end());
  return row[t - 1];
}

double min_alpha_nr(const Instance& inst, const Solution& sol, int k) {
  sol.validate(inst);
  double alpha = 1.0;
  for (int j = 0; j < inst.n(); ++j) {
    alpha = std::max(alpha, ratio(inst.d(j, sol.assign[j]),
                                  neighborhood_radius(inst, k, j)));
  }
  return alpha;
}

double socially_fair_cost(const Instance& inst, const Solution& sol, int p) {
  sol.validate(inst);
  if (p < 1) throw std::invalid_argument("exponent p must be at least 1");
  std::vector<double> total(inst.m(), 0.0);
  for (int j = 0; j < inst.n(); ++j) {
    total[inst.color(j)] += std::pow(inst.d(j, sol.assign[j]), p);
  }
  double worst = 0.0;
  for (int h = 0; h < inst.m(); ++h) {
    worst = std::max(worst, total[h] / inst.color_count(h));
  }
  return worst;
}

double min_alpha_proportional(const Instance& inst, const Solution& sol, int k) {
  sol.validate(inst);
  const int t = population(inst, k);
  double alpha = 1.0;
  std::vector<double> ratios(inst.n());
  for (int y = 0; y < inst.n(); ++y) {
    for (int i = 0; i < inst.n(); ++i) {
      ratios[i] = ratio(inst.d(i, sol.assign[i]), inst.d(i, y));
    }
    std::nth_element(ratios.begin(), ratios.begin() + (t - 1), ratios.end(),
                     std::greater<>());
    alpha = std::max(alpha, ratios[t - 1]);
  }
  return alpha;
}

}  // namespace fairkc
