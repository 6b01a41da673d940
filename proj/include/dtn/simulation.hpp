#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dtn/network.hpp"
#include "dtn/routing.hpp"

namespace dtn {

class Random;

enum class HopOutcome { Survived, Lost };
enum class PacketState { Intact, Damaged };

std::string_view to_string(PacketState state);

struct SimConfig {
  std::size_t packet_count = 500;
  std::size_t run_count = 5;
  double sigma_frac = 0.05;
  NetworkConfig network;
  std::uint64_t seed = 1;
  // Maximum simulation steps per packet, as a multiple of the node count.
  std::size_t step_budget_factor = 10;
};

void validate(const SimConfig& config);

struct PacketRecord {
  std::size_t packet_index = 0;
  ProtocolKind protocol = ProtocolKind::BundleProtocol;
  Route route;
  double transmission_time_hr = 0.0;
  PacketState state = PacketState::Intact;
};

struct RunSummary {
  ProtocolKind protocol = ProtocolKind::BundleProtocol;
  double percent_error = 0.0;
  double time_mean_hr = 0.0;
  // Absent when fewer than two packets were simulated.
  std::optional<double> time_std_hr;
  std::optional<double> time_sem_hr;
  std::vector<double> crm_hr;
  Route most_frequent_route;
  std::size_t most_frequent_count = 0;
};

struct RunResult {
  NetworkState network;  // as built, i.e. default state
  // records[p] holds every packet for kAllProtocols[p], in packet order.
  std::array<std::vector<PacketRecord>, 3> records;
  std::array<RunSummary, 3> summaries;
  std::size_t degenerate_hops = 0;
};

// 100 * damaged / total.
double percent_error(std::size_t damaged, std::size_t total);

// Survived iff a uniform [0,1) draw is strictly below `quality`.
HopOutcome hop_outcome(Random& rng, double quality);

// Called once per step after the network has been perturbed.
using StepObserver = std::function<void(std::size_t step, const NetworkState&)>;

struct PacketResult {
  std::array<PacketRecord, 3> records;  // in kAllProtocols order
  std::size_t steps = 0;
  std::size_t degenerate_hops = 0;
};

// Moves three copies of one packet from Probe to Ground, one per protocol,
// through a shared sequence of perturbed network states. `network` must be
// in its reset state; it is left perturbed.
PacketResult simulate_packet(NetworkState& network, Random& rng, double sigma_frac,
                             std::size_t packet_index = 0,
                             std::size_t step_budget_factor = 10,
                             const StepObserver& observer = {});

// Builds one random network and simulates config.packet_count packets on it,
// resetting the network before each packet.
RunResult run_simulation(const SimConfig& config, Random& rng);

// Simulates packets on an existing network (used for hand-built topologies).
RunResult run_packets(NetworkState network, const SimConfig& config, Random& rng);

std::vector<double> cumulative_running_mean(std::span<const double> samples);

}  // namespace dtn
