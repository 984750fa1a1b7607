#pragma once

#include "fairkc/core.hpp"

namespace fairkc {

/// The ceil(n/k)-th smallest distance from j to the points of the instance,
/// j itself included.
double neighborhood_radius(const Instance& inst, int k, int j);

/// Smallest alpha >= 1 with d(j, phi(j)) <= alpha * NR(j) for every point.
/// A point with NR(j) = 0 contributes +inf when it is served from a positive
/// distance and 1 otherwise (0/0 = 1).
double min_alpha_nr(const Instance& inst, const Solution& sol, int k);

/// max_h (1/|P^h|) sum_{j in P^h} d(j, phi(j))^p.
double socially_fair_cost(const Instance& inst, const Solution& sol, int p);

/// Smallest alpha >= 1 such that for every candidate y fewer than ceil(n/k)
/// points i have alpha * d(i, y) < d(i, phi(i)). For each y this is the
/// ceil(n/k)-th largest ratio d(i, phi(i)) / d(i, y); a zero denominator
/// gives +inf over a positive numerator and 1 over zero.
double min_alpha_proportional(const Instance& inst, const Solution& sol, int k);

}  // namespace fairkc
