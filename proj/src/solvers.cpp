#include "fairkc/solvers.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "fairkc/divide.hpp"
#include "fairkc/flow.hpp"
#include "fairkc/lp.hpp"

namespace fairkc {

namespace {

void check_k(const Instance& inst, int k) {
  if (k < 1 || k > inst.n()) {
    throw std::invalid_argument("k must lie in [1, n], got " + std::to_string(k));
  }
}

// Lowest unmet color quota, or -1.
int lowest_deficit(std::span<const int> counts, const DSBounds& dsb) {
  for (std::size_t h = 0; h < counts.size(); ++h) {
    if (counts[h] < dsb.k_lo[h]) return static_cast<int>(h);
  }
  return -1;
}

struct Group {
  int center;
  std::vector<int> members;  // ascending
  std::vector<int> q;
};

bool holds(const Group& grp, int j) {
  return std::binary_search(grp.members.begin(), grp.members.end(), j);
}

// Lowest member of color h, or -1.
int first_of_color(const Instance& inst, const Group& grp, int h) {
  for (int j : grp.members) {
    if (inst.color(j) == h) return j;
  }
  return -1;
}

// Members Q may still take. A center outside its own cluster counts against
// this too, since one member has to stand in for it during Divide.
int room(const Group& grp) {
  return static_cast<int>(grp.members.size()) - static_cast<int>(grp.q.size());
}

// Top up deficient colors: largest cluster holding a spare point of the
// color first, then the earlier cluster; lowest such point. A point is spare
// when no cluster uses it as a center.
void repair_quotas(const Instance& inst, const DSBounds& dsb,
                   std::vector<Group>& groups, std::vector<int>& counts) {
  std::vector<char> used(inst.n(), 0);
  for (const auto& grp : groups) {
    for (int q : grp.q) used[q] = 1;
  }
  for (int h = lowest_deficit(counts, dsb); h >= 0;
       h = lowest_deficit(counts, dsb)) {
    int best = -1;
    int best_point = -1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& grp = groups[g];
      if (best >= 0 && grp.members.size() <= groups[best].members.size()) {
        continue;
      }
      if (room(grp) <= 0) continue;
      for (int j : grp.members) {
        if (inst.color(j) != h || used[j]) continue;
        best = static_cast<int>(g);
        best_point = j;
        break;
      }
    }
    if (best < 0) {
      throw InfeasibleQuota("no cluster has a spare point of color " +
                            std::to_string(h));
    }
    groups[best].q.push_back(best_point);
    used[best_point] = 1;
    ++counts[h];
  }
}

// Divide every cluster over its Q. A center whose own point was assigned to
// another cluster is replaced during Divide by the lowest member outside Q,
// and the points handed to that stand-in go to the center.
Solution divide_all(const Instance& inst, const std::vector<Group>& groups) {
  Solution out;
  out.assign.assign(inst.n(), -1);
  for (const auto& grp : groups) {
    out.centers.insert(out.centers.end(), grp.q.begin(), grp.q.end());
    auto q = grp.q;
    int ref = grp.center;
    int stand_in = -1;
    if (!holds(grp, grp.center)) {
      const bool kept = std::find(q.begin(), q.end(), grp.center) != q.end();
      ref = q[0];
      if (kept) {
        for (int j : grp.members) {
          if (std::find(q.begin(), q.end(), j) == q.end()) {
            stand_in = ref = j;
            break;
          }
        }
        std::replace(q.begin(), q.end(), grp.center, stand_in);
      }
    }
    const auto to = divide(inst, grp.members, ref, q);
    for (std::size_t a = 0; a < grp.members.size(); ++a) {
      out.assign[grp.members[a]] = to[a] == stand_in ? grp.center : to[a];
    }
  }
  return out;
}

std::vector<Group> active_groups(const Solution& sol) {
  const auto clusters = sol.clusters();
  std::vector<Group> groups;
  for (std::size_t c = 0; c < sol.centers.size(); ++c) {
    if (clusters[c].empty()) continue;
    groups.push_back({sol.centers[c], clusters[c], {}});
  }
  return groups;
}

}  // namespace

Solution gonzalez(const Instance& inst, int k,
                  std::optional<unsigned long long> seed) {
  check_k(inst, k);
  const int n = inst.n();
  std::vector<double> gap(n, std::numeric_limits<double>::infinity());
  std::vector<char> chosen(n, 0);
  Solution sol;
  int next = seed ? static_cast<int>(*seed % static_cast<unsigned long long>(n)) : 0;
  while (true) {
    sol.centers.push_back(next);
    chosen[next] = 1;
    for (int j = 0; j < n; ++j) gap[j] = std::min(gap[j], inst.d(next, j));
    if (static_cast<int>(sol.centers.size()) == k) break;
    next = -1;
    for (int j = 0; j < n; ++j) {
      if (chosen[j]) continue;
      if (next < 0 || gap[j] > gap[next]) next = j;
    }
  }
  sol.assign = nearest_center_assignment(inst, sol.centers);
  return sol;
}

FairAssignment assignment_gf(const Instance& inst, std::span<const int> centers,
                             const GFBounds& gfb) {
  if (centers.empty()) throw std::invalid_argument("empty center set");
  gfb.validate(inst.m());
  for (int c : centers) {
    if (c < 0 || c >= inst.n()) throw std::invalid_argument("center out of range");
  }

  std::vector<double> radii;
  double reach = 0.0;
  for (int j = 0; j < inst.n(); ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int c : centers) {
      radii.push_back(inst.d(c, j));
      nearest = std::min(nearest, inst.d(c, j));
    }
    reach = std::max(reach, nearest);
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  // Below `reach` some point has no admissible center.
  std::size_t lo = std::lower_bound(radii.begin(), radii.end(), reach) - radii.begin();
  std::size_t hi = radii.size() - 1;

  auto best = solve_assignment_lp(inst, centers, radii[hi], gfb);
  if (!best) {
    throw InfeasibleError("fair assignment LP is infeasible at every radius");
  }
  std::size_t best_at = hi;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto x = solve_assignment_lp(inst, centers, radii[mid], gfb);
    if (x) {
      best = std::move(x);
      best_at = mid;
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (best_at != lo) {
    best = solve_assignment_lp(inst, centers, radii[lo], gfb);
    best_at = lo;
  }

  FairAssignment out;
  out.radius = radii[best_at];
  out.solution.centers.assign(centers.begin(), centers.end());
  out.solution.assign = max_flow_gf(inst, *best);
  return out;
}

Solution alg_gf(const Instance& inst, int k, const GFBounds& gfb,
                std::optional<unsigned long long> seed) {
  const auto blind = gonzalez(inst, k, seed);
  return assignment_gf(inst, blind.centers, gfb).solution;
}

Solution alg_ds(const Instance& inst, const DSBounds& dsb) {
  const int m = inst.m();
  if (static_cast<int>(dsb.k_lo.size()) != m ||
      static_cast<int>(dsb.k_hi.size()) != m) {
    throw std::invalid_argument("DS bounds do not match the color count");
  }
  for (int h = 0; h < m; ++h) {
    if (inst.color_count(h) < dsb.k_lo[h]) {
      throw InfeasibleQuota("color " + std::to_string(h) + " has " +
                            std::to_string(inst.color_count(h)) +
                            " points but needs " + std::to_string(dsb.k_lo[h]) +
                            " centers");
    }
  }
  dsb.validate(inst);
  check_k(inst, dsb.k);

  const int n = inst.n();
  std::vector<int> counts(m, 0);
  int owed = 0;
  for (int h = 0; h < m; ++h) owed += dsb.k_lo[h];
  auto pickable = [&](int h, int picked) {
    if (counts[h] >= dsb.k_hi[h]) return false;
    const int owed_after = owed - (counts[h] < dsb.k_lo[h] ? 1 : 0);
    return dsb.k - picked - 1 >= owed_after;
  };

  std::vector<double> gap(n, std::numeric_limits<double>::infinity());
  std::vector<char> chosen(n, 0);
  Solution sol;
  while (static_cast<int>(sol.centers.size()) < dsb.k) {
    const int picked = static_cast<int>(sol.centers.size());
    int next = -1;
    for (int j = 0; j < n; ++j) {
      if (chosen[j] || !pickable(inst.color(j), picked)) continue;
      if (next < 0 || gap[j] > gap[next]) next = j;
    }
    if (next < 0) break;
    const int h = inst.color(next);
    if (counts[h] < dsb.k_lo[h]) --owed;
    ++counts[h];
    chosen[next] = 1;
    sol.centers.push_back(next);
    for (int j = 0; j < n; ++j) gap[j] = std::min(gap[j], inst.d(next, j));
  }
  if (owed > 0) throw InfeasibleQuota("center quotas cannot be met");
  sol.assign = nearest_center_assignment(inst, sol.centers);
  return sol;
}

DsToGfdsResult ds_to_gfds_detailed(const Instance& inst, const Solution& ds_sol,
                                   const GFBounds& gfb, const DSBounds& dsb) {
  ds_sol.validate(inst);
  DsToGfdsResult result;
  result.assigned = assignment_gf(inst, ds_sol.centers, gfb).solution;

  auto groups = active_groups(result.assigned);
  result.deleted_centers =
      static_cast<int>(ds_sol.centers.size() - groups.size());
  std::vector<int> counts(inst.m(), 0);
  for (auto& grp : groups) {
    grp.q.push_back(grp.center);
    ++counts[inst.color(grp.center)];
  }
  repair_quotas(inst, dsb, groups, counts);
  int total = 0;
  for (const auto& grp : groups) total += static_cast<int>(grp.q.size());
  for (int h = 0; h < inst.m(); ++h) {
    if (counts[h] > dsb.k_hi[h] || total > dsb.k) {
      throw InfeasibleQuota("re-assigned clusters cannot meet the center quotas");
    }
  }
  result.solution = divide_all(inst, groups);
  return result;
}

Solution ds_to_gfds(const Instance& inst, const Solution& ds_sol,
                    const GFBounds& gfb, const DSBounds& dsb) {
  return ds_to_gfds_detailed(inst, ds_sol, gfb, dsb).solution;
}

Solution gf_to_gfds(const Instance& inst, const Solution& gf_sol,
                    const GFBounds& gfb, const DSBounds& dsb) {
  gf_sol.validate(inst);
  gfb.validate(inst.m());
  const int m = inst.m();
  auto groups = active_groups(gf_sol);
  if (static_cast<int>(groups.size()) > dsb.k) {
    throw std::invalid_argument("GF solution has more active centers than k");
  }

  std::vector<std::vector<int>> present(groups.size(), std::vector<int>(m, 0));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int j : groups[g].members) ++present[g][inst.color(j)];
  }

  // Cover pass as a matching of clusters to quota slots (k_lo[h] slots of
  // color h, in color order). When every cluster holds every color this is
  // the greedy pick of the lowest deficient color, cluster by cluster.
  std::vector<int> slot_color;
  for (int h = 0; h < m; ++h) slot_color.insert(slot_color.end(), dsb.k_lo[h], h);
  std::vector<int> slot_owner(slot_color.size(), -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, int g) -> bool {
    for (std::size_t u = 0; u < slot_color.size(); ++u) {
      if (seen[u] || present[g][slot_color[u]] == 0) continue;
      seen[u] = 1;
      if (slot_owner[u] < 0 || self(self, slot_owner[u])) {
        slot_owner[u] = g;
        return true;
      }
    }
    return false;
  };
  for (std::size_t g = 0; g < groups.size(); ++g) {
    seen.assign(slot_color.size(), 0);
    augment(augment, static_cast<int>(g));
  }
  std::vector<int> pick_color(groups.size(), -1);
  std::vector<int> counts(m, 0);
  for (std::size_t u = 0; u < slot_color.size(); ++u) {
    if (slot_owner[u] < 0) continue;
    pick_color[slot_owner[u]] = slot_color[u];
    ++counts[slot_color[u]];
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (pick_color[g] >= 0) continue;
    for (int h = 0; h < m && pick_color[g] < 0; ++h) {
      if (counts[h] < dsb.k_hi[h] && present[g][h] > 0) pick_color[g] = h;
    }
    if (pick_color[g] < 0) {
      throw MissingColorInCluster("cluster of center " +
                                  std::to_string(groups[g].center) +
                                  " has no point of a color with headroom");
    }
    ++counts[pick_color[g]];
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& grp = groups[g];
    const int h = pick_color[g];
    const int pick = holds(grp, grp.center) && inst.color(grp.center) == h
                         ? grp.center
                         : first_of_color(inst, grp, h);
    grp.q.push_back(pick);
  }
  repair_quotas(inst, dsb, groups, counts);
  int total = 0;
  for (const auto& grp : groups) total += static_cast<int>(grp.q.size());
  if (total > dsb.k) {
    throw MissingColorInCluster("clusters miss colors needed to meet the quotas within " +
                                std::to_string(dsb.k) + " centers");
  }
  return divide_all(inst, groups);
}

}  // namespace fairkc
