#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtn/network.hpp"

namespace dtn {

enum class ProtocolKind { BundleProtocol, DistanceDijkstra, QualityDijkstra };

inline constexpr std::array<ProtocolKind, 3> kAllProtocols = {
    ProtocolKind::BundleProtocol, ProtocolKind::DistanceDijkstra,
    ProtocolKind::QualityDijkstra};

std::string_view to_string(ProtocolKind kind);
// Accepts the names produced by to_string plus the short forms
// "bundle", "distance" and "quality". Throws ConfigError otherwise.
ProtocolKind parse_protocol(std::string_view name);

struct Route {
  std::vector<NodeId> nodes;

  friend bool operator==(const Route&, const Route&) = default;
};

// Node ids joined by '-', e.g. "0-4-1".
std::string format_route(const Route& route);

double route_cost(const NetworkState& network, const Route& route, CostKind kind);

// Minimum-cost path under edge_cost(kind). Ties go to the lowest node id.
Route dijkstra_path(const NetworkState& network, CostKind kind, NodeId src, NodeId dst);

struct HopDecision {
  NodeId next = 0;
  // Set when the bundle candidate set was empty and the hop fell back to dst.
  bool degenerate = false;
};

HopDecision next_hop(const NetworkState& network, ProtocolKind protocol, NodeId current,
                     NodeId dst);

// Modal route by exact sequence equality; earliest occurrence wins ties.
Route most_frequent_path(std::span<const Route> routes);

}  // namespace dtn
