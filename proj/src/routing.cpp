#include "dtn/routing.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dtn/error.hpp"

namespace dtn {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::BundleProtocol: return "bundle_protocol";
    case ProtocolKind::DistanceDijkstra: return "distance_dijkstra";
    case ProtocolKind::QualityDijkstra: return "quality_dijkstra";
  }
  return "unknown";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (ProtocolKind kind : kAllProtocols) {
    if (name == to_string(kind)) return kind;
  }
  if (name == "bundle") return ProtocolKind::BundleProtocol;
  if (name == "distance") return ProtocolKind::DistanceDijkstra;
  if (name == "quality") return ProtocolKind::QualityDijkstra;
  throw ConfigError("unknown protocol '" + std::string(name) +
                    "' (expected bundle, distance or quality)");
}

std::string format_route(const Route& route) {
  std::string out;
  for (std::size_t i = 0; i < route.nodes.size(); ++i) {
    if (i > 0) out += '-';
    out += std::to_string(route.nodes[i]);
  }
  return out;
}

double route_cost(const NetworkState& network, const Route& route, CostKind kind) {
  double total = 0.0;
  for (std::size_t i = 1; i < route.nodes.size(); ++i) {
    total += edge_cost(network, route.nodes[i - 1], route.nodes[i], kind);
  }
  return total;
}

namespace {

// Dense Dijkstra over a row-major cost matrix. The graph is complete, so the
// O(n^2) array form beats a heap for the sizes simulated here.
Route shortest_path(const std::vector<double>& costs, std::size_t n, NodeId src, NodeId dst) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  std::vector<double> dist(n, kInf);
  std::vector<NodeId> prev(n, kNone);
  std::vector<bool> settled(n, false);
  dist[src] = 0.0;

  for (std::size_t iter = 0; iter < n; ++iter) {
    NodeId u = kNone;
    for (NodeId v = 0; v < n; ++v) {
      if (!settled[v] && dist[v] < kInf && (u == kNone || dist[v] < dist[u])) u = v;
    }
    if (u == kNone || u == dst) break;
    settled[u] = true;
    for (NodeId v = 0; v < n; ++v) {
      if (settled[v] || v == u) continue;
      const double alt = dist[u] + costs[u * n + v];
      if (alt < dist[v]) {
        dist[v] = alt;
        prev[v] = u;
      }
    }
  }

  Route route;
  for (NodeId v = dst; v != kNone; v = prev[v]) {
    route.nodes.push_back(v);
    if (v == src) break;
  }
  std::reverse(route.nodes.begin(), route.nodes.end());
  if (route.nodes.empty() || route.nodes.front() != src) {
    throw SimulationFault("destination unreachable");
  }
  return route;
}

void check_endpoints(const NetworkState& network, NodeId src, NodeId dst) {
  if (src >= network.node_count() || dst >= network.node_count()) {
    throw UsageError("node id out of range");
  }
  if (src == dst) throw UsageError("source and destination must differ");
}

HopDecision bundle_next_hop(const NetworkState& network, NodeId current, NodeId dst) {
  const double here = network.geometric_distance(current, dst);
  const bool skip_direct = current == kProbeId && dst == kGroundId && network.node_count() > 2;

  HopDecision best{dst, true};
  double best_quality = -1.0;
  for (NodeId v = 0; v < network.node_count(); ++v) {
    if (v == current) continue;
    if (skip_direct && v == kGroundId) continue;
    if (!(network.geometric_distance(v, dst) < here)) continue;
    const double q = network.link(current, v).current_quality;
    if (q > best_quality) {
      best_quality = q;
      best = HopDecision{v, false};
    }
  }
  return best;
}

}  // namespace

Route dijkstra_path(const NetworkState& network, CostKind kind, NodeId src, NodeId dst) {
  check_endpoints(network, src, dst);
  return shortest_path(cost_matrix(network, kind), network.node_count(), src, dst);
}

HopDecision next_hop(const NetworkState& network, ProtocolKind protocol, NodeId current,
                     NodeId dst) {
  check_endpoints(network, current, dst);
  switch (protocol) {
    case ProtocolKind::BundleProtocol:
      return bundle_next_hop(network, current, dst);
    case ProtocolKind::DistanceDijkstra:
      return {dijkstra_path(network, CostKind::TransmissionTime, current, dst).nodes.at(1)};
    case ProtocolKind::QualityDijkstra:
      return {dijkstra_path(network, CostKind::QualityComplement, current, dst).nodes.at(1)};
  }
  throw std::logic_error("unhandled protocol");
}

Route most_frequent_path(std::span<const Route> routes) {
  if (routes.empty()) throw UsageError("most_frequent_path needs at least one route");
  std::vector<std::pair<const Route*, std::size_t>> counts;
  for (const Route& r : routes) {
    auto it = std::find_if(counts.begin(), counts.end(),
                           [&](const auto& entry) { return *entry.first == r; });
    if (it == counts.end()) {
      counts.emplace_back(&r, 1);
    } else {
      ++it->second;
    }
  }
  // max_element returns the first maximum, i.e. the earliest-seen route.
  auto best = std::max_element(counts.begin(), counts.end(), [](const auto& x, const auto& y) {
    return x.second < y.second;
  });
  return *best->first;
}

}  // namespace dtn
