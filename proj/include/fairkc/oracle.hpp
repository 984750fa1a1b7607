#pragma once

#include <functional>
#include <optional>

#include "fairkc/core.hpp"

namespace fairkc {

// The exhaustive search was asked for more than it is allowed to handle.
class TooLarge : public Error {
 public:
  using Error::Error;
};

inline constexpr int kOracleMaxPoints = 12;
inline constexpr int kOracleMaxCenters = 3;

struct OracleResult {
  double cost = 0.0;
  Solution solution;  // every center active
};

/// Exact minimum k-center cost over center sets of size <= k and all
/// assignments, subject to GF with additive violation <= rho_allow (when
/// `gfb` is given) and DS over active centers (when `dsb` is given). nullopt
/// when nothing qualifies. Throws TooLarge past n = 12 or k = 3.
std::optional<OracleResult> brute_force_opt(const Instance& inst, int k,
                                            const std::optional<GFBounds>& gfb,
                                            const std::optional<DSBounds>& dsb,
                                            double rho_allow = 0.0);

/// Calls `visit` for every solution with at most k centers, all of them
/// active, whose center set passes `keep` (all sets when empty). Same size
/// caps as brute_force_opt.
void for_each_solution(const Instance& inst, int k,
                       const std::function<void(const Solution&)>& visit,
                       const std::function<bool(const std::vector<int>&)>& keep = {});

}  // namespace fairkc
