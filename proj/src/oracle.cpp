#include "fairkc/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace fairkc {

namespace {

void check_caps(const Instance& inst, int k) {
  if (inst.n() > kOracleMaxPoints || k > kOracleMaxCenters) {
    throw TooLarge("oracle handles n <= " + std::to_string(kOracleMaxPoints) +
                   " and k <= " + std::to_string(kOracleMaxCenters) + ", got n = " +
                   std::to_string(inst.n()) + ", k = " + std::to_string(k));
  }
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

// Visits every subset of [0, n) of size 1..k in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> s;
  auto rec = [&](auto&& self, int from) -> void {
    if (!s.empty()) fn(s);
    if (static_cast<int>(s.size()) == k) return;
    for (int v = from; v < n; ++v) {
      s.push_back(v);
      self(self, v + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
}

bool ds_ok(const Instance& inst, std::span<const int> centers, const DSBounds& dsb) {
  std::vector<int> counts(inst.m(), 0);
  for (int c : centers) ++counts[inst.color(c)];
  for (int h = 0; h < inst.m(); ++h) {
    if (counts[h] < dsb.k_lo[h] || counts[h] > dsb.k_hi[h]) return false;
  }
  return true;
}

// Searches for an assignment of every point to a center of `centers` within
// distance `radius`, leaving no center empty and meeting GF up to `rho`.
// States are memoized on (next point, per-center color counts), which is all
// the constraints look at.
class AssignmentSearch {
 public:
  AssignmentSearch(const Instance& inst, std::span<const int> centers,
                   double radius, const std::optional<GFBounds>& gfb, double rho)
      : inst_(inst), centers_(centers.begin(), centers.end()), radius_(radius),
        gfb_(gfb), rho_(rho),
        counts_(centers.size() * inst.m(), 0), assign_(inst.n(), -1) {}

  std::optional<std::vector<int>> run() {
    if (dfs(0)) return assign_;
    return std::nullopt;
  }

 private:
  bool final_ok() const {
    const int m = inst_.m();
    for (std::size_t s = 0; s < centers_.size(); ++s) {
      int size = 0;
      for (int h = 0; h < m; ++h) size += counts_[s * m + h];
      if (size == 0) return false;
      if (!gfb_) continue;
      for (int h = 0; h < m; ++h) {
        const double c = counts_[s * m + h];
        if (gfb_->beta[h] * size - c > rho_ + kTolerance) return false;
        if (c - gfb_->alpha[h] * size > rho_ + kTolerance) return false;
      }
    }
    return true;
  }

  bool dfs(int j) {
    if (j == inst_.n()) return final_ok();
    std::vector<int> key(counts_);
    key.push_back(j);
    if (failed_.count(key)) return false;
    const int m = inst_.m();
    for (std::size_t s = 0; s < centers_.size(); ++s) {
      if (inst_.d(centers_[s], j) > radius_) continue;
      ++counts_[s * m + inst_.color(j)];
      assign_[j] = centers_[s];
      const bool ok = dfs(j + 1);
      --counts_[s * m + inst_.color(j)];
      if (ok) return true;
    }
    failed_.insert(std::move(key));
    return false;
  }

  const Instance& inst_;
  std::vector<int> centers_;
  double radius_;
  const std::optional<GFBounds>& gfb_;
  double rho_;
  std::vector<int> counts_;
  std::vector<int> assign_;
  std::set<std::vector<int>> failed_;
};

}  // namespace

std::optional<OracleResult> brute_force_opt(const Instance& inst, int k,
                                            const std::optional<GFBounds>& gfb,
                                            const std::optional<DSBounds>& dsb,
                                            double rho_allow) {
  check_caps(inst, k);
  if (gfb) gfb->validate(inst.m());
  if (dsb && (static_cast<int>(dsb->k_lo.size()) != inst.m() ||
              static_cast<int>(dsb->k_hi.size()) != inst.m())) {
    throw std::invalid_argument("DS bounds do not match the color count");
  }
  if (rho_allow < 0.0) throw std::invalid_argument("rho_allow must be >= 0");

  std::vector<std::vector<int>> subsets;
  for_each_subset(inst.n(), std::min(k, inst.n()), [&](const std::vector<int>& s) {
    if (!dsb || ds_ok(inst, s, *dsb)) subsets.push_back(s);
  });

  auto feasible_at = [&](double radius) -> std::optional<Solution> {
    for (const auto& s : subsets) {
      AssignmentSearch search(inst, s, radius, gfb, rho_allow);
      if (auto assign = search.run()) return Solution{s, *assign};
    }
    return std::nullopt;
  };

  std::vector<double> radii(inst.dist());
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::size_t lo = 0;
  std::size_t hi = radii.size() - 1;
  auto best = feasible_at(radii[hi]);
  if (!best) return std::nullopt;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto sol = feasible_at(radii[mid])) {
      best = std::move(sol);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return OracleResult{cost(inst, *best), std::move(*best)};
}

void for_each_solution(const Instance& inst, int k,
                       const std::function<void(const Solution&)>& visit,
                       const std::function<bool(const std::vector<int>&)>& keep) {
  check_caps(inst, k);
  const int n = inst.n();
  for_each_subset(n, std::min(k, n), [&](const std::vector<int>& s) {
    if (keep && !keep(s)) return;
    Solution sol{s, std::vector<int>(n, s[0])};
    std::vector<int> slot(n, 0);
    std::vector<int> load(s.size(), 0);
    load[0] = n;
    while (true) {
      if (std::all_of(load.begin(), load.end(), [](int v) { return v > 0; })) {
        visit(sol);
      }
      // Odometer over slot assignments.
      int j = 0;
      for (; j < n; ++j) {
        --load[slot[j]];
        if (++slot[j] < static_cast<int>(s.size())) {
          ++load[slot[j]];
          sol.assign[j] = s[slot[j]];
          break;
        }
        slot[j] = 0;
        ++load[0];
        sol.assign[j] = s[0];
      }
      if (j == n) break;
    }
  });
}

}  // namespace fairkc
