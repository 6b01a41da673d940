#include "dtn/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "dtn/error.hpp"
#include "dtn/random.hpp"

namespace dtn {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Probe: return "probe";
    case NodeKind::Relay: return "relay";
    case NodeKind::Ground: return "ground";
  }
  return "unknown";
}

bool operator==(const Position& lhs, const Position& rhs) {
  return lhs.x_km == rhs.x_km && lhs.y_km == rhs.y_km;
}

bool operator==(const Node& lhs, const Node& rhs) {
  return lhs.id == rhs.id && lhs.kind == rhs.kind && lhs.position == rhs.position;
}

bool operator==(const LinkState& lhs, const LinkState& rhs) {
  return lhs.a == rhs.a && lhs.b == rhs.b && lhs.default_quality == rhs.default_quality &&
         lhs.current_quality == rhs.current_quality &&
         lhs.default_distance_km == rhs.default_distance_km &&
         lhs.current_distance_km == rhs.current_distance_km;
}

bool operator==(const NetworkState& lhs, const NetworkState& rhs) {
  return lhs.nodes_ == rhs.nodes_ && lhs.links_ == rhs.links_ &&
         lhs.constants_.end_to_end_km == rhs.constants_.end_to_end_km &&
         lhs.constants_.min_coord_km == rhs.constants_.min_coord_km;
}

NetworkState::NetworkState(std::vector<Node> nodes, std::span<const double> qualities,
                           PhysicalConstants constants)
    : nodes_(std::move(nodes)), constants_(constants) {
  const std::size_t n = nodes_.size();
  if (n < 2) throw UsageError("a network needs at least two nodes");
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes_[i].id != i) throw UsageError("node ids must equal their index");
  }
  if (qualities.size() != n * (n - 1) / 2) {
    throw UsageError("expected " + std::to_string(n * (n - 1) / 2) + " link qualities, got " +
                     std::to_string(qualities.size()));
  }
  links_.reserve(qualities.size());
  std::size_t k = 0;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      const double q = std::clamp(qualities[k++], 0.0, 1.0);
      const double d = euclidean_distance(nodes_[a].position, nodes_[b].position);
      links_.push_back(LinkState{a, b, q, q, d, d});
    }
  }
}

std::size_t NetworkState::link_index(NodeId u, NodeId v) const {
  const std::size_t n = nodes_.size();
  if (u == v || u >= n || v >= n) {
    throw UsageError("no link between nodes " + std::to_string(u) + " and " +
                     std::to_string(v));
  }
  const std::size_t a = std::min(u, v);
  const std::size_t b = std::max(u, v);
  // Offset of row a in the packed upper triangle, then column.
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

bool NetworkState::is_direct_link(NodeId u, NodeId v) const {
  return (u == kProbeId && v == kGroundId) || (u == kGroundId && v == kProbeId);
}

double NetworkState::geometric_distance(NodeId from, NodeId dst) const {
  if (from == dst) return 0.0;
  return link(from, dst).default_distance_km;
}

void validate(const NetworkConfig& config) {
  if (config.relay_count == 0) {
    throw ConfigError("relay_count must be at least 1: no relay path exists without relays");
  }
  const auto& c = config.constants;
  if (!(c.min_coord_km > 0.0) || !std::isfinite(c.min_coord_km)) {
    throw ConfigError("min_coord_km must be positive and finite");
  }
  if (!std::isfinite(c.end_to_end_km) || !(c.end_to_end_km > 2.0 * c.min_coord_km)) {
    throw ConfigError("end_to_end_km must be finite and exceed 2 * min_coord_km");
  }
  if (!(config.beta_a > 0.0) || !(config.beta_b > 0.0) || !std::isfinite(config.beta_a) ||
      !std::isfinite(config.beta_b)) {
    throw ConfigError("beta_a and beta_b must be positive");
  }
}

std::vector<Node> place_nodes(const NetworkConfig& config, Random& rng) {
  validate(config);
  const double span = config.constants.end_to_end_km;
  const double floor = config.constants.min_coord_km;

  std::vector<Node> nodes;
  nodes.reserve(config.relay_count + 2);
  nodes.push_back(Node{kProbeId, NodeKind::Probe, {span, 0.0}});
  nodes.push_back(Node{kGroundId, NodeKind::Ground, {0.0, 0.0}});
  for (std::size_t i = 0; i < config.relay_count; ++i) {
    const double x = rng.uniform(floor, span - floor);
    const double y = rng.uniform(-span / 2.0, span / 2.0);
    nodes.push_back(Node{static_cast<NodeId>(nodes.size()), NodeKind::Relay, {x, y}});
  }
  return nodes;
}

double euclidean_distance(Position a, Position b) {
  return std::hypot(b.x_km - a.x_km, b.y_km - a.y_km);
}

double sample_quality(Random& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("beta shape parameters must be positive");
  return std::clamp(rng.beta(a, b), 0.0, 1.0);
}

NetworkState build_network(std::vector<Node> nodes, Random& rng, const NetworkConfig& config) {
  const std::size_t n = nodes.size();
  std::vector<double> qualities(n * (n - 1) / 2);
  for (double& q : qualities) q = sample_quality(rng, config.beta_a, config.beta_b);
  return NetworkState(std::move(nodes), qualities, config.constants);
}

namespace {

double raw_cost(const LinkState& link, CostKind kind) {
  switch (kind) {
    case CostKind::TransmissionTime:
      return link.current_distance_km / PhysicalConstants::kSpeedOfLightKmPerS;
    case CostKind::QualityComplement:
      return 1.0 - link.current_quality;
  }
  throw std::logic_error("unhandled cost kind");
}

double direct_link_penalty(const NetworkState& network, CostKind kind) {
  double total = 0.0;
  for (const LinkState& link : network.links()) {
    if (!network.is_direct_link(link.a, link.b)) total += raw_cost(link, kind);
  }
  return total + 1.0;
}

}  // namespace

double edge_cost(const NetworkState& network, NodeId u, NodeId v, CostKind kind) {
  if (network.is_direct_link(u, v)) return direct_link_penalty(network, kind);
  return raw_cost(network.link(u, v), kind);
}

std::vector<double> cost_matrix(const NetworkState& network, CostKind kind) {
  const std::size_t n = network.node_count();
  std::vector<double> costs(n * n, 0.0);
  double total = 0.0;
  for (const LinkState& link : network.links()) {
    if (network.is_direct_link(link.a, link.b)) continue;
    const double c = raw_cost(link, kind);
    costs[link.a * n + link.b] = c;
    costs[link.b * n + link.a] = c;
    total += c;
  }
  if (network.node_count() > kGroundId) {
    costs[kProbeId * n + kGroundId] = total + 1.0;
    costs[kGroundId * n + kProbeId] = total + 1.0;
  }
  return costs;
}

void perturb(NetworkState& network, Random& rng, double sigma_frac) {
  if (!(sigma_frac >= 0.0)) throw UsageError("sigma_frac must be non-negative");
  for (std::size_t a = 0; a < network.node_count(); ++a) {
    for (std::size_t b = a + 1; b < network.node_count(); ++b) {
      LinkState& link = network.link(static_cast<NodeId>(a), static_cast<NodeId>(b));
      const double q = rng.normal(link.default_quality, sigma_frac * link.default_quality);
      link.current_quality = std::clamp(q, 0.0, 1.0);
      const double d =
          rng.normal(link.default_distance_km, sigma_frac * link.default_distance_km);
      // Never shorter than the line-of-sight separation, so every route is at
      // least as long as the straight Probe-Ground line.
      link.current_distance_km = std::max(d, link.default_distance_km);
    }
  }
}

void reset(NetworkState& network) {
  for (std::size_t a = 0; a < network.node_count(); ++a) {
    for (std::size_t b = a + 1; b < network.node_count(); ++b) {
      LinkState& link = network.link(static_cast<NodeId>(a), static_cast<NodeId>(b));
      link.current_quality = link.default_quality;
      link.current_distance_km = link.default_distance_km;
    }
  }
}

}  // namespace dtn
