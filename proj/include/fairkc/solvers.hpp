#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fairkc/core.hpp"

namespace fairkc {

// A color cannot reach its center quota.
class InfeasibleQuota : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

// The GF input lacks a color that the covering pass has to pick.
class MissingColorInCluster : public Error {
 public:
  using Error::Error;
};

/// Farthest-point-first k-center. The first center is point 0, or a point
/// drawn from `seed` when given. Ties go to the lowest index.
Solution gonzalez(const Instance& inst, int k,
                  std::optional<unsigned long long> seed = std::nullopt);

struct FairAssignment {
  Solution solution;
  double radius = 0.0;  // smallest radius with a feasible fair LP
};

/// Smallest radius R among the center-to-point distances for which the fair
/// assignment LP over `centers` is feasible, rounded to an integral
/// assignment with MaxFlowGF. Centers may end up with empty clusters.
/// Throws InfeasibleError when the LP is infeasible at every radius.
FairAssignment assignment_gf(const Instance& inst, std::span<const int> centers,
                             const GFBounds& gfb);

/// Gonzalez centers followed by a fair assignment.
Solution alg_gf(const Instance& inst, int k, const GFBounds& gfb,
                std::optional<unsigned long long> seed = std::nullopt);

/// Farthest-point-first restricted to points whose color keeps the quotas
/// reachable, followed by nearest-center assignment.
/// Throws InfeasibleQuota when some color has fewer than k_lo points.
Solution alg_ds(const Instance& inst, const DSBounds& dsb);

struct DsToGfdsResult {
  Solution solution;
  Solution assigned;       // after the fair re-assignment, before repair
  int deleted_centers = 0;  // centers left empty by the re-assignment
};

/// Converts a DS solution into one satisfying both constraint families:
/// fair re-assignment over the DS centers, removal of emptied centers, extra
/// centers for colors that fell below quota, then Divide on every cluster.
DsToGfdsResult ds_to_gfds_detailed(const Instance& inst, const Solution& ds_sol,
                                   const GFBounds& gfb, const DSBounds& dsb);

Solution ds_to_gfds(const Instance& inst, const Solution& ds_sol,
                    const GFBounds& gfb, const DSBounds& dsb);

/// Converts a GF solution into one satisfying both constraint families.
/// Each nonempty cluster gets one new center (a deficient color first, else
/// the lowest color with headroom), deficient colors are then topped up from
/// the largest clusters, and every cluster is split with Divide. Clusters are
/// matched to quota slots, so an input whose clusters miss some colors is
/// still handled when the quotas fit in k centers.
/// Throws MissingColorInCluster when missing colors push the center count
/// past k or leave a cluster without a color to pick.
Solution gf_to_gfds(const Instance& inst, const Solution& gf_sol,
                    const GFBounds& gfb, const DSBounds& dsb);

}  // namespace fairkc
