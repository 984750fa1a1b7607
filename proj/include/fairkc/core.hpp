#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fairkc {

// Absolute tolerance for real comparisons.
inline constexpr double kTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No solution exists under the requested constraints.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// A point set with an explicit pairwise distance matrix and one color per
/// point. Distances form a pseudometric: distinct points may coincide.
class Instance {
 public:
  Instance() = default;

  /// `dist` is row-major n*n. Throws InvalidInstance when the matrix is not
  /// symmetric with a zero diagonal, has negative or non-finite entries, or
  /// some color in [0, m) has no point.
  static Instance from_matrix(std::vector<double> dist, std::vector<int> colors,
                              int m);

  /// Euclidean distances over the given feature vectors.
  static Instance from_features(std::vector<std::vector<double>> features,
                                std::vector<int> colors, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  double d(int i, int j) const {
    return dist_[static_cast<std::size_t>(i) * n_ + j];
  }
  int color(int j) const { return colors_[j]; }
  const std::vector<int>& colors() const { return colors_; }
  const std::vector<double>& dist() const { return dist_; }
  int color_count(int h) const { return color_counts_[h]; }
  const std::vector<int>& color_counts() const { return color_counts_; }
  /// r_h = n_h / n.
  double proportion(int h) const {
    return static_cast<double>(color_counts_[h]) / n_;
  }
  const std::optional<std::vector<std::vector<double>>>& features() const {
    return features_;
  }
  /// Largest amount by which any triple breaks the triangle inequality
  /// (0 for a metric).
  double triangle_slack() const;
  bool satisfies_triangle_inequality(double tol = kTolerance) const {
    return triangle_slack() <= tol;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<double> dist_;
  std::vector<int> colors_;
  std::vector<int> color_counts_;
  std::optional<std::vector<std::vector<double>>> features_;
};

/// Per-color proportion bounds: beta_h |C_i| <= |C_i^h| <= alpha_h |C_i|.
struct GFBounds {
  std::vector<double> beta;
  std::vector<double> alpha;

  /// Throws std::invalid_argument unless 0 < beta_h <= alpha_h <= 1.
  void validate(int m) const;
  /// beta_h = (1 - delta) r_h, alpha_h = min(1, (1 + delta) r_h).
  static GFBounds from_delta(const Instance& inst, double delta);
  /// Same beta = alpha = value for every color.
  static GFBounds uniform(int m, double beta, double alpha);
};

/// Per-color center-count bounds k_lo[h] <= |S cap P^h| <= k_hi[h] with a
/// total budget k.
struct DSBounds {
  std::vector<int> k_lo;
  std::vector<int> k_hi;
  int k = 0;

  /// Throws std::invalid_argument when the bounds are inconsistent or some
  /// color has fewer than k_lo[h] points.
  void validate(const Instance& inst) const;
  /// k_lo[h] = ceil(theta r_h k), k_hi[h] = k.
  static DSBounds from_theta(const Instance& inst, int k, double theta);
  static DSBounds unconstrained(int m, int k);
};

/// A center set plus an explicit assignment. `assign[j]` is the point index of
/// the center serving point j and must be a member of `centers`.
struct Solution {
  std::vector<int> centers;
  std::vector<int> assign;

  /// Throws std::invalid_argument if the assignment is incomplete or routes a
  /// point to a non-center.
  void validate(const Instance& inst) const;
  /// Points of each center's cluster, parallel to `centers`, ascending.
  std::vector<std::vector<int>> clusters() const;
  std::vector<int> active_centers() const;
  std::vector<int> inactive_centers() const;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Sparse fractional assignment over a list of centers. Entry (slot, value)
/// in `rows[j]` is x_{centers[slot], j}.
class FractionalAssignment {
 public:
  struct Entry {
    int slot;
    double value;
  };

  FractionalAssignment() = default;
  /// Clamps entries to [0,1] and drops entries below 1e-9. Throws
  /// std::invalid_argument when an entry lies outside [-1e-12, 1 + 1e-12] or a
  /// row does not sum to 1 within 1e-9.
  FractionalAssignment(std::vector<int> centers,
                       std::vector<std::vector<Entry>> rows);

  const std::vector<int>& centers() const { return centers_; }
  const std::vector<std::vector<Entry>>& rows() const { return rows_; }
  int num_points() const { return static_cast<int>(rows_.size()); }
  double value(int slot, int j) const;
  /// Sum_j x_{slot,j}.
  std::vector<double> center_mass() const;
  /// Sum_{j in C^h} x_{slot,j}, indexed [slot][h].
  std::vector<std::vector<double>> center_color_mass(const Instance& inst) const;

 private:
  std::vector<int> centers_;
  std::vector<std::vector<Entry>> rows_;
};

struct ViolationReport {
  double gf_rho = 0.0;
  int ds_violation = 0;
  std::vector<int> inactive_centers;
  double cost = 0.0;
};

struct ExperimentConfig {
  std::string input;
  std::vector<int> k_values;
  double delta = 0.2;
  double theta = 0.8;
  int p = 1;
  std::optional<unsigned long long> seed;
  std::string output;
};

/// Nearest-center assignment. Every center serves itself; other points go to
/// the closest center, ties to the earliest center in `centers`.
std::vector<int> nearest_center_assignment(const Instance& inst,
                                           std::span<const int> centers);

/// k-center radius: max_j d(j, assign[j]).
double cost(const Instance& inst, const Solution& sol);

/// Additive GF violation rho over active clusters.
double gf_violation(const Instance& inst, const GFBounds& gfb,
                    const Solution& sol);

/// Violation of a single cluster given its per-color counts.
double cluster_gf_violation(std::span<const int> color_counts,
                            const GFBounds& gfb);

/// Additive GF violation of a fractional assignment (per-center masses).
double fractional_gf_violation(const Instance& inst, const GFBounds& gfb,
                               const FractionalAssignment& x);

/// Max over colors of max(k_lo - k_h, k_h - k_hi, 0), counting active centers.
int ds_violation(const Solution& sol, const DSBounds& dsb, const Instance& inst);

/// Price of fairness. +inf when cost_blind = 0 < cost_constrained; 1 when both
/// are 0.
double pof(double cost_constrained, double cost_blind);

ViolationReport evaluate(const Instance& inst, const Solution& sol,
                         const GFBounds& gfb, const DSBounds& dsb);

}  // namespace fairkc
