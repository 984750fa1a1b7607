#include "fairkc/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fairkc {

namespace {

// Rounds up, treating values within tolerance of an integer as that integer.
int snapped_ceil(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= kTolerance) return static_cast<int>(r);
  return static_cast<int>(std::ceil(v));
}

}  // namespace

Instance Instance::from_matrix(std::vector<double> dist,
                               std::vector<int> colors, int m) {
  const auto n = colors.size();
  if (n == 0) throw InvalidInstance("instance has no points");
  if (dist.size() != n * n) {
    throw InvalidInstance("distance matrix has " + std::to_string(dist.size()) +
                          " entries, expected " + std::to_string(n * n));
  }
  if (m < 1) throw InvalidInstance("color count must be positive");

  Instance inst;
  inst.n_ = static_cast<int>(n);
  inst.m_ = m;
  inst.color_counts_.assign(m, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (colors[j] < 0 || colors[j] >= m) {
      throw InvalidInstance("point " + std::to_string(j) + " has color " +
                            std::to_string(colors[j]) + " outside [0, " +
                            std::to_string(m) + ")");
    }
    ++inst.color_counts_[colors[j]];
  }
  for (int h = 0; h < m; ++h) {
    if (inst.color_counts_[h] == 0) {
      throw InvalidInstance("color " + std::to_string(h) + " has no points");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i * n + i] != 0.0) {
      throw InvalidInstance("nonzero diagonal at " + std::to_string(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = dist[i * n + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidInstance("invalid distance at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
      if (std::abs(v - dist[j * n + i]) > kTolerance) {
        throw InvalidInstance("asymmetric distance at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      }
    }
  }
  inst.dist_ = std::move(dist);
  inst.colors_ = std::move(colors);
  return inst;
}

Instance Instance::from_features(std::vector<std::vector<double>> features,
                                 std::vector<int> colors, int m) {
  const auto n = features.size();
  if (n != colors.size()) {
    throw InvalidInstance("feature rows and colors differ in length");
  }
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (features[i].size() != features[0].size()) {
      throw InvalidInstance("ragged feature row " + std::to_string(i));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t f = 0; f < features[i].size(); ++f) {
        const double diff = features[i][f] - features[j][f];
        s += diff * diff;
      }
      dist[i * n + j] = dist[j * n + i] = std::sqrt(s);
    }
  }
  Instance inst = from_matrix(std::move(dist), std::move(colors), m);
  inst.features_ = std::move(features);
  return inst;
}

double Instance::triangle_slack() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const double dij = d(i, j);
      for (int l = 0; l < n_; ++l) {
        worst = std::max(worst, dij - d(i, l) - d(l, j));
      }
    }
  }
  return worst;
}

void GFBounds::validate(int m) const {
  if (static_cast<int>(beta.size()) != m || static_cast<int>(alpha.size()) != m) {
    throw std::invalid_argument("GF bounds must have one entry per color");
  }
  for (int h = 0; h < m; ++h) {
    if (!(beta[h] > 0.0) || beta[h] > alpha[h] + kTolerance ||
        alpha[h] > 1.0 + kTolerance) {
      throw std::invalid_argument("GF bounds for color " + std::to_string(h) +
                                  " violate 0 < beta <= alpha <= 1");
    }
  }
}

GFBounds GFBounds::from_delta(const Instance& inst, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in [0, 1)");
  }
  GFBounds b;
  for (int h = 0; h < inst.m(); ++h) {
    const double r = inst.proportion(h);
    b.beta.push_back((1.0 - delta) * r);
    b.alpha.push_back(std::min(1.0, (1.0 + delta) * r));
  }
  return b;
}

GFBounds GFBounds::uniform(int m, double beta, double alpha) {
  return GFBounds{std::vector<double>(m, beta), std::vector<double>(m, alpha)};
}

void DSBounds::validate(const Instance& inst) const {
  const int m = inst.m();
  if (static_cast<int>(k_lo.size()) != m || static_cast<int>(k_hi.size()) != m) {
    throw std::invalid_argument("DS bounds must have one entry per color");
  }
  if (k < 1) throw std::invalid_argument("center budget k must be positive");
  int lo_sum = 0;
  for (int h = 0; h < m; ++h) {
    if (k_lo[h] < 0 || k_lo[h] > k_hi[h]) {
      throw std::invalid_argument("DS bounds for color " + std::to_string(h) +
                                  " violate 0 <= k_lo <= k_hi");
    }
    if (k_lo[h] > inst.color_count(h)) {
      throw std::invalid_argument("color " + std::to_string(h) + " has only " +
                                  std::to_string(inst.color_count(h)) +
                                  " points, fewer than k_lo = " +
                                  std::to_string(k_lo[h]));
    }
    lo_sum += k_lo[h];
  }
  if (lo_sum > k) {
    throw std::invalid_argument("sum of k_lo (" + std::to_string(lo_sum) +
                                ") exceeds k = " + std::to_string(k));
  }
}

DSBounds DSBounds::from_theta(const Instance& inst, int k, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in [0, 1]");
  }
  DSBounds b;
  b.k = k;
  for (int h = 0; h < inst.m(); ++h) {
    b.k_lo.push_back(snapped_ceil(theta * inst.proportion(h) * k));
    b.k_hi.push_back(k);
  }
  return b;
}

DSBounds DSBounds::unconstrained(int m, int k) {
  return DSBounds{std::vector<int>(m, 0), std::vector<int>(m, k), k};
}

void Solution::validate(const Instance& inst) const {
  if (static_cast<int>(assign.size()) != inst.n()) {
    throw std::invalid_argument("assignment covers " +
                                std::to_string(assign.size()) + " of " +
                                std::to_string(inst.n()) + " points");
  }
  std::vector<char> is_center(inst.n(), 0);
  for (int c : centers) {
    if (c < 0 || c >= inst.n()) {
      throw std::invalid_argument("center " + std::to_string(c) +
                                  " is not a point");
    }
    if (is_center[c]) {
      throw std::invalid_argument("duplicate center " + std::to_string(c));
    }
    is_center[c] = 1;
  }
  for (int j = 0; j < inst.n(); ++j) {
    const int c = assign[j];
    if (c < 0 || c >= inst.n() || !is_center[c]) {
      throw std::invalid_argument("point " + std::to_string(j) +
                                  " is assigned to non-center " +
                                  std::to_string(c));
    }
  }
}

std::vector<std::vector<int>> Solution::clusters() const {
  std::vector<std::vector<int>> out(centers.size());
  for (int j = 0; j < static_cast<int>(assign.size()); ++j) {
    const auto it = std::find(centers.begin(), centers.end(), assign[j]);
    if (it != centers.end()) out[it - centers.begin()].push_back(j);
  }
  return out;
}

std::vector<int> Solution::active_centers() const {
  std::vector<int> out;
  const auto cl = clusters();
  for (std::size_t s = 0; s < centers.size(); ++s) {
    if (!cl[s].empty()) out.push_back(centers[s]);
  }
  return out;
}

std::vector<int> Solution::inactive_centers() const {
  std::vector<int> out;
  const auto cl = clusters();
  for (std::size_t s = 0; s < centers.size(); ++s) {
    if (cl[s].empty()) out.push_back(centers[s]);
  }
  return out;
}

FractionalAssignment::FractionalAssignment(std::vector<int> centers,
                                           std::vector<std::vector<Entry>> rows)
    : centers_(std::move(centers)), rows_(std::move(rows)) {
  const int k = static_cast<int>(centers_.size());
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    auto& row = rows_[j];
    double sum = 0.0;
    for (auto& e : row) {
      if (e.slot < 0 || e.slot >= k) {
        throw std::invalid_argument("fractional entry references slot " +
                                    std::to_string(e.slot));
      }
      if (e.value < -1e-12 || e.value > 1.0 + 1e-12) {
        throw std::invalid_argument("fractional entry out of [0,1] for point " +
                                    std::to_string(j));
      }
      e.value = std::clamp(e.value, 0.0, 1.0);
      sum += e.value;
    }
    if (std::abs(sum - 1.0) > kTolerance) {
      throw std::invalid_argument("row " + std::to_string(j) + " sums to " +
                                  std::to_string(sum));
    }
    std::erase_if(row, [](const Entry& e) { return e.value < kTolerance; });
    std::sort(row.begin(), row.end(),
              [](const Entry& a, const Entry& b) { return a.slot < b.slot; });
  }
}

double FractionalAssignment::value(int slot, int j) const {
  for (const auto& e : rows_[j]) {
    if (e.slot == slot) return e.value;
  }
  return 0.0;
}

std::vector<double> FractionalAssignment::center_mass() const {
  std::vector<double> mass(centers_.size(), 0.0);
  for (const auto& row : rows_) {
    for (const auto& e : row) mass[e.slot] += e.value;
  }
  return mass;
}

std::vector<std::vector<double>> FractionalAssignment::center_color_mass(
    const Instance& inst) const {
  std::vector<std::vector<double>> mass(centers_.size(),
                                        std::vector<double>(inst.m(), 0.0));
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    for (const auto& e : rows_[j]) {
      mass[e.slot][inst.color(static_cast<int>(j))] += e.value;
    }
  }
  return mass;
}

std::vector<int> nearest_center_assignment(const Instance& inst,
                                           std::span<const int> centers) {
  std::vector<int> assign(inst.n(), -1);
  for (int j = 0; j < inst.n(); ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (int c : centers) {
      if (c == j) {
        assign[j] = c;
        break;
      }
      if (inst.d(j, c) < best) {
        best = inst.d(j, c);
        assign[j] = c;
      }
    }
  }
  return assign;
}

double cost(const Instance& inst, const Solution& sol) {
  double worst = 0.0;
  for (int j = 0; j < inst.n(); ++j) {
    worst = std::max(worst, inst.d(j, sol.assign[j]));
  }
  return worst;
}

double cluster_gf_violation(std::span<const int> color_counts,
                            const GFBounds& gfb) {
  int size = 0;
  for (int c : color_counts) size += c;
  if (size == 0) return 0.0;
  double rho = 0.0;
  for (std::size_t h = 0; h < color_counts.size(); ++h) {
    const double c = color_counts[h];
    rho = std::max({rho, gfb.beta[h] * size - c, c - gfb.alpha[h] * size});
  }
  // beta * size carries rounding error even when the cluster is exact.
  return rho <= kTolerance ? 0.0 : rho;
}

double gf_violation(const Instance& inst, const GFBounds& gfb,
                    const Solution& sol) {
  double rho = 0.0;
  for (const auto& cluster : sol.clusters()) {
    std::vector<int> counts(inst.m(), 0);
    for (int j : cluster) ++counts[inst.color(j)];
    rho = std::max(rho, cluster_gf_violation(counts, gfb));
  }
  return rho;
}

double fractional_gf_violation(const Instance& inst, const GFBounds& gfb,
                               const FractionalAssignment& x) {
  const auto total = x.center_mass();
  const auto by_color = x.center_color_mass(inst);
  double rho = 0.0;
  for (std::size_t s = 0; s < total.size(); ++s) {
    for (int h = 0; h < inst.m(); ++h) {
      rho = std::max({rho, gfb.beta[h] * total[s] - by_color[s][h],
                      by_color[s][h] - gfb.alpha[h] * total[s]});
    }
  }
  return rho <= kTolerance ? 0.0 : rho;
}

int ds_violation(const Solution& sol, const DSBounds& dsb,
                 const Instance& inst) {
  std::vector<int> per_color(inst.m(), 0);
  for (int c : sol.active_centers()) ++per_color[inst.color(c)];
  int worst = 0;
  for (int h = 0; h < inst.m(); ++h) {
    worst = std::max({worst, dsb.k_lo[h] - per_color[h],
                      per_color[h] - dsb.k_hi[h]});
  }
  return worst;
}

double pof(double cost_constrained, double cost_blind) {
  if (cost_blind <= 0.0) {
    return cost_constrained <= 0.0 ? 1.0
                                   : std::numeric_limits<double>::infinity();
  }
  return cost_constrained / cost_blind;
}

ViolationReport evaluate(const Instance& inst, const Solution& sol,
                         const GFBounds& gfb, const DSBounds& dsb) {
  ViolationReport r;
  r.gf_rho = gf_violation(inst, gfb, sol);
  r.ds_violation = ds_violation(sol, dsb, inst);
  r.inactive_centers = sol.inactive_centers();
  r.cost = cost(inst, sol);
  return r;
}

}  // namespace fairkc
