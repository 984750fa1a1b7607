#include "fairkc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <tuple>

namespace fairkc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

// Dense bounded-variable simplex working on the phase-1 problem
//   min sum(artificials)  s.t.  A x + slacks + artificials = b,  lo <= x <= hi.
class Phase1Simplex {
 public:
  explicit Phase1Simplex(const LinearProgram& lp)
      : rows_(static_cast<int>(lp.constraints.size())),
        structural_(lp.num_vars) {
    // Column layout: structural, one slack per inequality row, then one
    // artificial per row that the slack cannot absorb.
    lo_ = lp.lower;
    hi_ = lp.upper;
    value_ = lo_;
    std::vector<int> slack_of(rows_, -1);
    std::vector<double> slack_sign(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      const auto rel = lp.constraints[r].relation;
      if (rel == Relation::kEqual) continue;
      slack_of[r] = add_column(0.0, kInf, false);
      slack_sign[r] = rel == Relation::kLessEq ? 1.0 : -1.0;
    }

    std::vector<double> residual(rows_);
    for (int r = 0; r < rows_; ++r) {
      double lhs = 0.0;
      for (const auto& [v, a] : lp.constraints[r].coeffs) lhs += a * lo_[v];
      residual[r] = lp.constraints[r].rhs - lhs;
    }

    std::vector<int> art_of(rows_, -1);
    std::vector<double> art_sign(rows_, 0.0);
    basic_.assign(rows_, -1);
    for (int r = 0; r < rows_; ++r) {
      const double res = residual[r];
      if (slack_of[r] >= 0 && slack_sign[r] * res >= 0.0) {
        basic_[r] = slack_of[r];
        value_[slack_of[r]] = slack_sign[r] * res;
        continue;
      }
      art_of[r] = add_column(0.0, kInf, true);
      art_sign[r] = res >= 0.0 ? 1.0 : -1.0;
      basic_[r] = art_of[r];
      value_[art_of[r]] = std::abs(res);
    }

    cols_ = static_cast<int>(lo_.size());
    artificial_.resize(cols_, 0);
    tableau_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
    is_basic_.assign(cols_, 0);
    for (int r = 0; r < rows_; ++r) {
      double* row = row_ptr(r);
      for (const auto& [v, a] : lp.constraints[r].coeffs) row[v] += a;
      if (slack_of[r] >= 0) row[slack_of[r]] = slack_sign[r];
      if (art_of[r] >= 0) row[art_of[r]] = art_sign[r];
      // Scale so the basic column is +1 (its coefficient is +-1).
      const double pivot = row[basic_[r]];
      if (pivot != 1.0) {
        for (int c = 0; c < cols_; ++c) row[c] /= pivot;
      }
      is_basic_[basic_[r]] = 1;
    }

    // Reduced costs d_j = c_j - sum_r c_B(r) T[r][j].
    reduced_.assign(cols_, 0.0);
    for (int c = 0; c < cols_; ++c) {
      if (artificial_[c]) reduced_[c] = 1.0;
    }
    for (int r = 0; r < rows_; ++r) {
      if (!artificial_[basic_[r]]) continue;
      const double* row = row_ptr(r);
      for (int c = 0; c < cols_; ++c) reduced_[c] -= row[c];
    }
  }

  // Runs to phase-1 optimality; returns the remaining infeasibility.
  double run(long iteration_cap) {
    long iterations = 0;
    while (infeasibility() > 1e-11) {
      const int entering = choose_entering();
      if (entering < 0) break;
      if (++iterations > iteration_cap) {
        throw NumericFailure("simplex exceeded " + std::to_string(iteration_cap) +
                             " iterations");
      }
      step(entering);
    }
    return infeasibility();
  }

  // Only basic artificials can be nonzero.
  double infeasibility() const {
    double sum = 0.0;
    for (int r = 0; r < rows_; ++r) {
      if (artificial_[basic_[r]]) sum += std::max(0.0, value_[basic_[r]]);
    }
    return sum;
  }

  std::vector<double> structural_values() const {
    return {value_.begin(), value_.begin() + structural_};
  }

 private:
  int add_column(double lo, double hi, bool artificial) {
    lo_.push_back(lo);
    hi_.push_back(hi);
    value_.push_back(lo);
    artificial_.resize(lo_.size(), 0);
    artificial_.back() = artificial ? 1 : 0;
    return static_cast<int>(lo_.size()) - 1;
  }

  double* row_ptr(int r) {
    return tableau_.data() + static_cast<std::size_t>(r) * cols_;
  }
  const double* row_ptr(int r) const {
    return tableau_.data() + static_cast<std::size_t>(r) * cols_;
  }

  bool at_upper(int c) const { return value_[c] >= hi_[c]; }

  // Bland's rule: lowest-index improving nonbasic column.
  int choose_entering() const {
    for (int c = 0; c < cols_; ++c) {
      if (is_basic_[c] || hi_[c] <= lo_[c]) continue;
      if (!at_upper(c) && reduced_[c] < -kCostTol) return c;
      if (at_upper(c) && reduced_[c] > kCostTol) return c;
    }
    return -1;
  }

  void step(int entering) {
    const double dir = at_upper(entering) ? -1.0 : 1.0;
    double step_len = hi_[entering] - lo_[entering];
    int leave_row = -1;
    int leave_var = entering;
    bool leave_to_upper = false;

    for (int r = 0; r < rows_; ++r) {
      const double alpha = dir * row_ptr(r)[entering];
      const int b = basic_[r];
      double limit;
      bool to_upper;
      if (alpha > kPivotTol) {
        limit = (value_[b] - lo_[b]) / alpha;
        to_upper = false;
      } else if (alpha < -kPivotTol && hi_[b] < kInf) {
        limit = (hi_[b] - value_[b]) / -alpha;
        to_upper = true;
      } else {
        continue;
      }
      limit = std::max(limit, 0.0);
      // Ties go to the lowest variable index (Bland).
      if (limit < step_len - kPivotTol ||
          (limit <= step_len + kPivotTol && b < leave_var)) {
        step_len = limit;
        leave_row = r;
        leave_var = b;
        leave_to_upper = to_upper;
      }
    }
    if (!std::isfinite(step_len)) {
      throw NumericFailure("phase-1 simplex found an unbounded ray");
    }

    for (int r = 0; r < rows_; ++r) {
      const double a = row_ptr(r)[entering];
      if (a != 0.0) value_[basic_[r]] -= dir * a * step_len;
    }
    value_[entering] += dir * step_len;

    if (leave_row < 0) {
      // Bound flip: the entering column stays nonbasic at its other bound.
      value_[entering] = dir > 0 ? hi_[entering] : lo_[entering];
      return;
    }

    value_[leave_var] = leave_to_upper ? hi_[leave_var] : lo_[leave_var];
    if (artificial_[leave_var]) {
      // An artificial that left the basis never re-enters.
      hi_[leave_var] = 0.0;
      value_[leave_var] = 0.0;
    }
    pivot(leave_row, entering);
    is_basic_[leave_var] = 0;
    is_basic_[entering] = 1;
    basic_[leave_row] = entering;
  }

  void pivot(int pr, int pc) {
    double* prow = row_ptr(pr);
    const double p = prow[pc];
    for (int c = 0; c < cols_; ++c) prow[c] /= p;
    prow[pc] = 1.0;
    // Nonzero pattern of the pivot row, to skip zeros in the updates.
    nz_.clear();
    for (int c = 0; c < cols_; ++c) {
      if (prow[c] != 0.0) nz_.push_back(c);
    }
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* row = row_ptr(r);
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int c : nz_) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    const double f = reduced_[pc];
    if (f != 0.0) {
      for (int c : nz_) reduced_[c] -= f * prow[c];
      reduced_[pc] = 0.0;
    }
  }

  int rows_;
  int structural_;
  int cols_ = 0;
  std::vector<double> lo_, hi_, value_;
  std::vector<char> artificial_;
  std::vector<char> is_basic_;
  std::vector<int> basic_;
  std::vector<double> tableau_;
  std::vector<double> reduced_;
  std::vector<int> nz_;
};

// LP rows hold to 1e-7; rescale them to the exact unit sums the fractional
// assignment requires.
void normalize_rows(std::vector<std::vector<FractionalAssignment::Entry>>& rows) {
  for (auto& row : rows) {
    double sum = 0.0;
    for (const auto& e : row) sum += e.value;
    if (sum <= 0.0) continue;
    for (auto& e : row) e.value = std::min(1.0, e.value / sum);
  }
}

}  // namespace

void LinearProgram::validate() const {
  if (static_cast<int>(lower.size()) != num_vars ||
      static_cast<int>(upper.size()) != num_vars) {
    throw std::invalid_argument("variable bounds do not match num_vars");
  }
  for (int v = 0; v < num_vars; ++v) {
    if (!std::isfinite(lower[v]) || lower[v] > upper[v]) {
      throw std::invalid_argument("invalid bounds for variable " +
                                  std::to_string(v));
    }
  }
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    const auto& c = constraints[r];
    if (c.coeffs.empty()) {
      throw std::invalid_argument("constraint " + std::to_string(r) +
                                  " references no variable");
    }
    if (!std::isfinite(c.rhs)) {
      throw std::invalid_argument("non-finite rhs in constraint " +
                                  std::to_string(r));
    }
    for (const auto& [v, a] : c.coeffs) {
      if (v < 0 || v >= num_vars || !std::isfinite(a)) {
        throw std::invalid_argument("bad coefficient in constraint " +
                                    std::to_string(r));
      }
    }
  }
}

double LinearProgram::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int v = 0; v < num_vars; ++v) {
    worst = std::max({worst, lower[v] - x[v], x[v] - upper[v]});
  }
  for (const auto& c : constraints) {
    double lhs = 0.0;
    for (const auto& [v, a] : c.coeffs) lhs += a * x[v];
    switch (c.relation) {
      case Relation::kLessEq:
        worst = std::max(worst, lhs - c.rhs);
        break;
      case Relation::kGreaterEq:
        worst = std::max(worst, c.rhs - lhs);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(lhs - c.rhs));
        break;
    }
  }
  return worst;
}

std::optional<std::vector<double>> solve_feasibility(const LinearProgram& lp) {
  lp.validate();
  Phase1Simplex simplex(lp);
  const long cap = 50L * (lp.num_vars + static_cast<long>(lp.constraints.size()));
  const double infeasibility = simplex.run(cap);
  if (infeasibility > kLpFeasibilityTol) return std::nullopt;

  auto x = simplex.structural_values();
  for (int v = 0; v < lp.num_vars; ++v) {
    x[v] = std::clamp(x[v], lp.lower[v], lp.upper[v]);
    if (x[v] - lp.lower[v] < kTolerance) x[v] = lp.lower[v];
    if (lp.upper[v] - x[v] < kTolerance) x[v] = lp.upper[v];
  }
  if (lp.max_violation(x) > kLpFeasibilityTol) {
    throw NumericFailure("simplex drifted past the feasibility tolerance");
  }
  return x;
}

namespace {

// Appends the two proportion rows of one center slot. `terms` holds
// (variable, point color, weight), weight being how many points the variable
// stands for.
void add_proportion_rows(LinearProgram& lp,
                         const std::vector<std::tuple<int, int, double>>& terms,
                         const GFBounds& gfb, int m) {
  if (terms.empty()) return;
  for (int h = 0; h < m; ++h) {
    LinearConstraint lower{{}, Relation::kGreaterEq, 0.0};
    LinearConstraint upper{{}, Relation::kLessEq, 0.0};
    for (const auto& [v, color, w] : terms) {
      const double own = color == h ? 1.0 : 0.0;
      const double lo_coef = w * (own - gfb.beta[h]);
      const double hi_coef = w * (own - gfb.alpha[h]);
      if (lo_coef != 0.0) lower.coeffs.emplace_back(v, lo_coef);
      if (hi_coef != 0.0) upper.coeffs.emplace_back(v, hi_coef);
    }
    if (!lower.coeffs.empty()) lp.add(std::move(lower));
    if (!upper.coeffs.empty()) lp.add(std::move(upper));
  }
}

// Slots of the centers within `radius` of point j.
std::vector<int> admissible_slots(const Instance& inst, std::span<const int> centers,
                                  double radius, int j) {
  const int k = static_cast<int>(centers.size());
  std::vector<int> slots;
  for (int s = 0; s < k; ++s) {
    if (inst.d(centers[s], j) <= radius) slots.push_back(s);
  }
  return slots;
}

}  // namespace

AssignmentLp build_assignment_lp(const Instance& inst,
                                 std::span<const int> centers, double radius,
                                 const GFBounds& gfb) {
  const int k = static_cast<int>(centers.size());
  if (k == 0) throw std::invalid_argument("center set is empty");
  AssignmentLp out;
  std::vector<std::vector<std::tuple<int, int, double>>> per_slot(k);
  for (int j = 0; j < inst.n(); ++j) {
    LinearConstraint row{{}, Relation::kEqual, 1.0};
    for (int s : admissible_slots(inst, centers, radius, j)) {
      const int v = out.lp.add_var(0.0, 1.0);
      out.vars.emplace_back(s, j);
      row.coeffs.emplace_back(v, 1.0);
      per_slot[s].emplace_back(v, inst.color(j), 1.0);
    }
    if (row.coeffs.empty()) {
      throw EmptyRow("point " + std::to_string(j) + " has no center within " +
                     std::to_string(radius));
    }
    out.lp.add(std::move(row));
  }
  for (int s = 0; s < k; ++s) {
    add_proportion_rows(out.lp, per_slot[s], gfb, inst.m());
  }
  return out;
}

FractionalAssignment to_fractional(const Instance& inst,
                                   std::span<const int> centers,
                                   const AssignmentLp& alp,
                                   std::span<const double> x) {
  std::vector<std::vector<FractionalAssignment::Entry>> rows(inst.n());
  for (std::size_t v = 0; v < alp.vars.size(); ++v) {
    const auto [slot, j] = alp.vars[v];
    if (x[v] > 0.0) rows[j].push_back({slot, x[v]});
  }
  normalize_rows(rows);
  return FractionalAssignment({centers.begin(), centers.end()}, std::move(rows));
}

std::optional<FractionalAssignment> solve_assignment_lp(
    const Instance& inst, std::span<const int> centers, double radius,
    const GFBounds& gfb) {
  const int k = static_cast<int>(centers.size());
  if (k == 0) throw std::invalid_argument("center set is empty");
  const std::vector<int> center_list(centers.begin(), centers.end());

  if (k == 1) {
    for (int j = 0; j < inst.n(); ++j) {
      if (inst.d(centers[0], j) > radius) return std::nullopt;
    }
    for (int h = 0; h < inst.m(); ++h) {
      const double r = inst.proportion(h);
      if (r < gfb.beta[h] - kTolerance || r > gfb.alpha[h] + kTolerance) {
        return std::nullopt;
      }
    }
    std::vector<std::vector<FractionalAssignment::Entry>> rows(
        inst.n(), std::vector<FractionalAssignment::Entry>{{0, 1.0}});
    return FractionalAssignment(center_list, std::move(rows));
  }

  // Group points by (color, admissible slots).
  std::map<std::pair<int, std::vector<int>>, int> class_of_key;
  std::vector<std::vector<int>> class_slots;
  std::vector<int> class_color;
  std::vector<int> class_size;
  std::vector<int> class_of_point(inst.n());
  for (int j = 0; j < inst.n(); ++j) {
    auto slots = admissible_slots(inst, centers, radius, j);
    if (slots.empty()) return std::nullopt;
    auto key = std::make_pair(inst.color(j), slots);
    auto [it, inserted] =
        class_of_key.emplace(std::move(key), static_cast<int>(class_size.size()));
    if (inserted) {
      class_slots.push_back(std::move(slots));
      class_color.push_back(inst.color(j));
      class_size.push_back(0);
    }
    ++class_size[it->second];
    class_of_point[j] = it->second;
  }

  LinearProgram lp;
  std::vector<std::vector<int>> class_vars(class_size.size());
  std::vector<std::vector<std::tuple<int, int, double>>> per_slot(k);
  for (std::size_t c = 0; c < class_size.size(); ++c) {
    LinearConstraint row{{}, Relation::kEqual, 1.0};
    for (int s : class_slots[c]) {
      const int v = lp.add_var(0.0, 1.0);
      class_vars[c].push_back(v);
      row.coeffs.emplace_back(v, 1.0);
      per_slot[s].emplace_back(v, class_color[c],
                               static_cast<double>(class_size[c]));
    }
    lp.add(std::move(row));
  }
  for (int s = 0; s < k; ++s) add_proportion_rows(lp, per_slot[s], gfb, inst.m());

  const auto y = solve_feasibility(lp);
  if (!y) return std::nullopt;

  std::vector<std::vector<FractionalAssignment::Entry>> rows(inst.n());
  for (int j = 0; j < inst.n(); ++j) {
    const int c = class_of_point[j];
    for (std::size_t t = 0; t < class_slots[c].size(); ++t) {
      const double v = (*y)[class_vars[c][t]];
      if (v > 0.0) rows[j].push_back({class_slots[c][t], v});
    }
  }
  normalize_rows(rows);
  return FractionalAssignment(center_list, std::move(rows));
}

}  // namespace fairkc
