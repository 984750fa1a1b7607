#pragma once

#include <span>
#include <vector>

#include "fairkc/core.hpp"

namespace fairkc {

class InvalidSubset : public Error {
 public:
  using Error::Error;
};

/// Quotas for splitting one cluster among |Q| of its points.
struct DivisionPlan {
  std::vector<double> quota;    // T_h = |C^h| / |Q|
  std::vector<int> surplus;     // b_h = |C^h| - |Q| floor(T_h)
  std::vector<int> start;       // center where the walk for color h begins
  std::vector<std::vector<int>> counts;  // [q][h] points of color h for q
};

/// Computes the per-(center, color) counts Divide hands out. Colors are
/// visited in ascending index; each color's walk starts where the previous
/// color's ceiling allotments stopped.
DivisionPlan plan_division(std::span<const int> color_counts, int num_centers);

/// Splits `cluster` (points, any order) among the points in `q`, which must be
/// a nonempty subset of the cluster. Returns the chosen member of `q` for each
/// entry of `cluster`, in the same order. Within a color, points are handed
/// out in ascending index along the walk order of the plan.
///
/// `center` is the cluster's current center; it only has to be a member of
/// the cluster.
std::vector<int> divide(const Instance& inst, std::span<const int> cluster,
                        int center, std::span<const int> q);

}  // namespace fairkc
