#include "fairkc/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace fairkc {

namespace {

constexpr double kMassSnapTol = 1e-7;

// Residual network for Edmonds-Karp.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(nodes) {}

  int add_edge(int from, int to, long long cap) {
    const int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(cap);
    to_.push_back(from);
    cap_.push_back(0);
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  long long run(int s, int t) {
    for (auto& edges : adj_) {
      std::stable_sort(edges.begin(), edges.end(),
                       [&](int a, int b) { return to_[a] < to_[b]; });
    }
    long long total = 0;
    std::vector<int> parent_edge(adj_.size());
    while (true) {
      std::fill(parent_edge.begin(), parent_edge.end(), -1);
      std::queue<int> queue;
      queue.push(s);
      parent_edge[s] = -2;
      while (!queue.empty() && parent_edge[t] == -1) {
        const int u = queue.front();
        queue.pop();
        for (int e : adj_[u]) {
          const int v = to_[e];
          if (cap_[e] > 0 && parent_edge[v] == -1) {
            parent_edge[v] = e;
            queue.push(v);
          }
        }
      }
      if (parent_edge[t] == -1) break;
      long long push = std::numeric_limits<long long>::max();
      for (int v = t; v != s; v = to_[parent_edge[v] ^ 1]) {
        push = std::min(push, cap_[parent_edge[v]]);
      }
      for (int v = t; v != s; v = to_[parent_edge[v] ^ 1]) {
        cap_[parent_edge[v]] -= push;
        cap_[parent_edge[v] ^ 1] += push;
      }
      total += push;
    }
    return total;
  }

  long long flow_on(int edge) const { return cap_[edge ^ 1]; }

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<int> to_;
  std::vector<long long> cap_;
};

// Floor and ceiling of a fractional mass, snapping near-integers.
std::pair<long long, long long> floor_ceil(double mass) {
  const double r = std::round(mass);
  if (std::abs(mass - r) <= kMassSnapTol) {
    const auto v = static_cast<long long>(r);
    return {v, v};
  }
  return {static_cast<long long>(std::floor(mass)),
          static_cast<long long>(std::ceil(mass))};
}

}  // namespace

void BoundedFlowNetwork::validate() const {
  auto node_ok = [&](int v) { return v >= 0 && v < num_nodes; };
  if (!node_ok(source) || !node_ok(sink) || source == sink) {
    throw std::invalid_argument("bad source/sink");
  }
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto& arc = arcs[a];
    if (!node_ok(arc.from) || !node_ok(arc.to)) {
      throw std::invalid_argument("arc " + std::to_string(a) +
                                  " references an unknown node");
    }
    if (arc.lower < 0 || arc.lower > arc.upper) {
      throw std::invalid_argument("arc " + std::to_string(a) +
                                  " has invalid bounds");
    }
    if (arc.to == source || arc.from == sink) {
      throw std::invalid_argument("arc " + std::to_string(a) +
                                  " enters the source or leaves the sink");
    }
  }
}

std::optional<std::vector<long long>> feasible_integral_flow(
    const BoundedFlowNetwork& net, long long required_value) {
  net.validate();
  if (required_value < 0) return std::nullopt;

  const int super_source = net.num_nodes;
  const int super_sink = net.num_nodes + 1;
  MaxFlow mf(net.num_nodes + 2);
  std::vector<long long> excess(net.num_nodes, 0);
  std::vector<int> edge_of(net.arcs.size());
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    const auto& arc = net.arcs[a];
    edge_of[a] = mf.add_edge(arc.from, arc.to, arc.upper - arc.lower);
    excess[arc.to] += arc.lower;
    excess[arc.from] -= arc.lower;
  }
  // Return arc t -> s pinned at the required value.
  excess[net.source] += required_value;
  excess[net.sink] -= required_value;

  long long demand = 0;
  for (int v = 0; v < net.num_nodes; ++v) {
    if (excess[v] > 0) {
      mf.add_edge(super_source, v, excess[v]);
      demand += excess[v];
    } else if (excess[v] < 0) {
      mf.add_edge(v, super_sink, -excess[v]);
    }
  }
  if (mf.run(super_source, super_sink) != demand) return std::nullopt;

  std::vector<long long> flow(net.arcs.size());
  for (std::size_t a = 0; a < net.arcs.size(); ++a) {
    flow[a] = net.arcs[a].lower + mf.flow_on(edge_of[a]);
  }
  return flow;
}

MaxFlowGfNetwork build_max_flow_gf_network(const Instance& inst,
                                           const FractionalAssignment& x) {
  const int k = static_cast<int>(x.centers().size());
  const int m = inst.m();
  MaxFlowGfNetwork out;
  auto& net = out.net;

  std::vector<int> point_node(inst.n());
  for (int j = 0; j < inst.n(); ++j) point_node[j] = net.add_node();
  std::vector<std::vector<int>> color_node(k, std::vector<int>(m));
  std::vector<int> center_node(k);
  for (int s = 0; s < k; ++s) {
    for (int h = 0; h < m; ++h) color_node[s][h] = net.add_node();
    center_node[s] = net.add_node();
  }

  for (int j = 0; j < inst.n(); ++j) net.add_arc(net.source, point_node[j], 0, 1);
  for (int j = 0; j < inst.n(); ++j) {
    for (const auto& e : x.rows()[j]) {
      if (e.value <= kTolerance) continue;
      const int arc =
          net.add_arc(point_node[j], color_node[e.slot][inst.color(j)], 0, 1);
      out.point_arcs.push_back({arc, j, e.slot});
    }
  }
  const auto color_mass = x.center_color_mass(inst);
  out.color_arcs.assign(k, std::vector<int>(m));
  for (int s = 0; s < k; ++s) {
    for (int h = 0; h < m; ++h) {
      const auto [lo, hi] = floor_ceil(color_mass[s][h]);
      out.color_arcs[s][h] = net.add_arc(color_node[s][h], center_node[s], lo, hi);
    }
  }
  const auto mass = x.center_mass();
  for (int s = 0; s < k; ++s) {
    const auto [lo, hi] = floor_ceil(mass[s]);
    out.center_arcs.push_back(net.add_arc(center_node[s], net.sink, lo, hi));
  }
  return out;
}

std::vector<int> max_flow_gf(const Instance& inst, const FractionalAssignment& x) {
  if (x.num_points() != inst.n()) {
    throw std::invalid_argument("fractional assignment does not cover the instance");
  }
  const auto network = build_max_flow_gf_network(inst, x);
  const auto flow = feasible_integral_flow(network.net, inst.n());
  if (!flow) {
    throw InternalInfeasible("rounding network has no flow saturating all points");
  }
  std::vector<int> assign(inst.n(), -1);
  for (const auto& pa : network.point_arcs) {
    if ((*flow)[pa.arc] > 0) assign[pa.point] = x.centers()[pa.slot];
  }
  for (int j = 0; j < inst.n(); ++j) {
    if (assign[j] < 0) {
      throw InternalInfeasible("point " + std::to_string(j) + " left unassigned");
    }
  }
  return assign;
}

}  // namespace fairkc
