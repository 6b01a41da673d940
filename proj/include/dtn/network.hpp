#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dtn {

class Random;

using NodeId = std::uint32_t;

inline constexpr NodeId kProbeId = 0;
inline constexpr NodeId kGroundId = 1;

enum class NodeKind { Probe, Relay, Ground };

std::string_view to_string(NodeKind kind);

struct Position {
  double x_km = 0.0;
  double y_km = 0.0;
};

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::Relay;
  Position position;
};

struct PhysicalConstants {
  static constexpr double kSpeedOfLightKmPerS = 299'792.458;
  double end_to_end_km = 1.27e9;
  double min_coord_km = 1.0e4;
};

struct NetworkConfig {
  std::size_t relay_count = 10;
  PhysicalConstants constants;
  double beta_a = 3.0;
  double beta_b = 2.0;
};

enum class CostKind { TransmissionTime, QualityComplement };

struct LinkState {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  double default_quality = 0.0;
  double current_quality = 0.0;
  double default_distance_km = 0.0;
  double current_distance_km = 0.0;
};

// Complete graph over all nodes, one LinkState per unordered pair. Both
// traversal directions share the same state.
class NetworkState {
 public:
  NetworkState() = default;
  // Distances come from node positions. `qualities` lists one default
  // quality per unordered pair in pair order (0,1),(0,2),...,(1,2),...
  NetworkState(std::vector<Node> nodes, std::span<const double> qualities,
               PhysicalConstants constants = {});

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<LinkState>& links() const { return links_; }
  const PhysicalConstants& constants() const { return constants_; }

  const LinkState& link(NodeId u, NodeId v) const { return links_[link_index(u, v)]; }
  LinkState& link(NodeId u, NodeId v) { return links_[link_index(u, v)]; }

  bool is_direct_link(NodeId u, NodeId v) const;

  // Straight-line distance to `dst` from the default geometry; 0 for dst itself.
  double geometric_distance(NodeId from, NodeId dst) const;

  std::size_t link_index(NodeId u, NodeId v) const;

  friend bool operator==(const NetworkState&, const NetworkState&);

 private:
  std::vector<Node> nodes_;
  std::vector<LinkState> links_;
  PhysicalConstants constants_;
};

bool operator==(const Position& lhs, const Position& rhs);
bool operator==(const Node& lhs, const Node& rhs);
bool operator==(const LinkState& lhs, const LinkState& rhs);

void validate(const NetworkConfig& config);

// Ground at the origin, Probe at (end_to_end_km, 0), relays uniform in
// [min, L - min] x [-L/2, L/2].
std::vector<Node> place_nodes(const NetworkConfig& config, Random& rng);

double euclidean_distance(Position a, Position b);

double sample_quality(Random& rng, double a = 3.0, double b = 2.0);

NetworkState build_network(std::vector<Node> nodes, Random& rng,
                           const NetworkConfig& config = {});

// Cost of traversing link (u, v) under the current state. The Probe-Ground
// link costs the sum of every other link's cost plus one, which exceeds any
// simple relay path.
double edge_cost(const NetworkState& network, NodeId u, NodeId v, CostKind kind);

// Full symmetric n x n cost matrix (row-major, zero diagonal) including the
// direct-link penalty. Equivalent to calling edge_cost for every pair.
std::vector<double> cost_matrix(const NetworkState& network, CostKind kind);

// Redraws every link's current state around its default: quality is normal
// with sd sigma_frac * default, clamped to [0, 1]; distance is normal with sd
// sigma_frac * default, clamped below at the default distance.
void perturb(NetworkState& network, Random& rng, double sigma_frac);

void reset(NetworkState& network);

}  // namespace dtn
