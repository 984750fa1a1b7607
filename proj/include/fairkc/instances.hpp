#pragma once

#include <span>
#include <string>
#include <vector>

#include "fairkc/core.hpp"

namespace fairkc {

// A community pattern that needs an even community size got an odd one.
class PatternArity : public Error {
 public:
  using Error::Error;
};

enum class CommunityPattern {
  kAlternating,     // community c has color c % 2
  kOddMixedLast,    // alternating, last community half color 0, half color 1
  kDsVariant,       // l - 1 communities of color 0, last half 1 and half 2
};

CommunityPattern parse_community_pattern(const std::string& name);
std::string to_string(CommunityPattern pattern);

/// l communities of `size` coinciding points each, every two communities at
/// distance R. Points of community c are c*size .. (c+1)*size - 1.
Instance gen_l_community(int l, int size, double R, CommunityPattern pattern);

/// Two-color gadget: group_size points of color 0 spread over floor(k/2)
/// locations and group_size points of color 1 over ceil(k/2) locations. The
/// first location of each color is a hub at distance r = R / (4 alpha_ap)
/// from the other locations of that color; colors are R apart.
Instance gen_proportional_gadget(int k, int group_size, double R, double alpha_ap);

/// Uniform points in [0,1]^dim with Euclidean distances. Color counts follow
/// `proportions` by largest remainder with every color present; colors are
/// shuffled over the points.
Instance gen_random(int n, int m, int dim, std::span<const double> proportions,
                    unsigned long long seed);

}  // namespace fairkc
