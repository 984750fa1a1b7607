#pragma once

#include <optional>
#include <vector>

#include "fairkc/core.hpp"

namespace fairkc {

struct FlowArc {
  int from = 0;
  int to = 0;
  long long lower = 0;
  long long upper = 0;
};

/// Directed network with integral lower/upper arc bounds and distinguished
/// source and sink.
struct BoundedFlowNetwork {
  int num_nodes = 2;
  int source = 0;
  int sink = 1;
  std::vector<FlowArc> arcs;

  int add_node() { return num_nodes++; }
  int add_arc(int from, int to, long long lower, long long upper) {
    arcs.push_back({from, to, lower, upper});
    return static_cast<int>(arcs.size()) - 1;
  }
  /// Throws std::invalid_argument on inverted or negative bounds, unknown
  /// nodes, or arcs entering the source / leaving the sink.
  void validate() const;
};

/// An integral flow meeting every arc bound whose source-to-sink value equals
/// `required_value`, or nullopt. Lower bounds are removed by the usual
/// circulation transform and the reduced problem is solved with BFS
/// augmenting paths, scanning neighbours in ascending node order.
std::optional<std::vector<long long>> feasible_integral_flow(
    const BoundedFlowNetwork& net, long long required_value);

// MaxFlowGF found no flow although the fractional input guarantees one.
class InternalInfeasible : public Error {
 public:
  using Error::Error;
};

/// The rounding network for a fractional assignment, with the arcs needed to
/// read an assignment back off a flow.
struct MaxFlowGfNetwork {
  BoundedFlowNetwork net;
  // (arc, point, center slot) for every point -> (slot, color) arc.
  struct PointArc {
    int arc;
    int point;
    int slot;
  };
  std::vector<PointArc> point_arcs;
  std::vector<int> center_arcs;                // slot -> arc into the sink
  std::vector<std::vector<int>> color_arcs;    // [slot][h] -> arc into slot
};

/// Builds the network: source -> point (upper 1), point -> (slot, color of the
/// point) whenever x > 1e-9 (upper 1), (slot, h) -> slot bounded by the floor
/// and ceiling of the slot's color-h mass, slot -> sink bounded by the floor
/// and ceiling of its total mass. Masses within 1e-7 of an integer are snapped.
MaxFlowGfNetwork build_max_flow_gf_network(const Instance& inst,
                                           const FractionalAssignment& x);

/// Rounds `x` to an integral assignment (point -> center point index) that
/// keeps every center's total and per-color counts between the floor and the
/// ceiling of their fractional values, and only uses pairs in the support of
/// `x`. Throws InternalInfeasible if no such flow exists.
std::vector<int> max_flow_gf(const Instance& inst, const FractionalAssignment& x);

}  // namespace fairkc
