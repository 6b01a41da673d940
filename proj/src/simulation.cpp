#include "dtn/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dtn/error.hpp"
#include "dtn/random.hpp"
#include "dtn/stats.hpp"

namespace dtn {

std::string_view to_string(PacketState state) {
  return state == PacketState::Intact ? "intact" : "damaged";
}

void validate(const SimConfig& config) {
  if (config.packet_count < 1) throw ConfigError("packet_count must be at least 1");
  if (config.run_count < 1) throw ConfigError("run_count must be at least 1");
  if (!(config.sigma_frac >= 0.0) || !std::isfinite(config.sigma_frac)) {
    throw ConfigError("sigma_frac must be a finite non-negative number");
  }
  if (config.step_budget_factor < 1) throw ConfigError("step budget factor must be positive");
  validate(config.network);
}

double percent_error(std::size_t damaged, std::size_t total) {
  if (total == 0) throw UsageError("percent_error needs at least one packet");
  return 100.0 * static_cast<double>(damaged) / static_cast<double>(total);
}

HopOutcome hop_outcome(Random& rng, double quality) {
  return rng.uniform01() < quality ? HopOutcome::Survived : HopOutcome::Lost;
}

namespace {

constexpr double kSecondsPerHour = 3600.0;

struct Copy {
  NodeId at = kProbeId;
  double seconds = 0.0;
  bool damaged = false;
  bool arrived = false;
  Route route{{kProbeId}};
};

}  // namespace

PacketResult simulate_packet(NetworkState& network, Random& rng, double sigma_frac,
                             std::size_t packet_index, std::size_t step_budget_factor,
                             const StepObserver& observer) {
  std::array<Copy, 3> copies;
  PacketResult result;
  const std::size_t budget = step_budget_factor * network.node_count();

  auto unfinished = [&] {
    return std::any_of(copies.begin(), copies.end(), [](const Copy& c) { return !c.arrived; });
  };

  while (unfinished()) {
    if (++result.steps > budget) {
      throw SimulationFault("packet " + std::to_string(packet_index) +
                            " exceeded the step budget of " + std::to_string(budget) +
                            " steps");
    }
    perturb(network, rng, sigma_frac);
    if (observer) observer(result.steps, network);

    for (std::size_t p = 0; p < copies.size(); ++p) {
      Copy& copy = copies[p];
      if (copy.arrived) continue;
      const HopDecision hop = next_hop(network, kAllProtocols[p], copy.at, kGroundId);
      if (hop.degenerate) ++result.degenerate_hops;
      const LinkState& link = network.link(copy.at, hop.next);
      copy.seconds += link.current_distance_km / PhysicalConstants::kSpeedOfLightKmPerS;
      if (hop_outcome(rng, link.current_quality) == HopOutcome::Lost) copy.damaged = true;
      copy.at = hop.next;
      copy.route.nodes.push_back(hop.next);
      copy.arrived = copy.at == kGroundId;
    }
  }

  for (std::size_t p = 0; p < copies.size(); ++p) {
    result.records[p] = PacketRecord{
        packet_index, kAllProtocols[p], std::move(copies[p].route),
        copies[p].seconds / kSecondsPerHour,
        copies[p].damaged ? PacketState::Damaged : PacketState::Intact};
  }
  return result;
}

namespace {

RunSummary summarize_run(ProtocolKind protocol, const std::vector<PacketRecord>& records) {
  RunSummary summary;
  summary.protocol = protocol;
  std::vector<double> times;
  std::vector<Route> routes;
  times.reserve(records.size());
  routes.reserve(records.size());
  std::size_t damaged = 0;
  for (const PacketRecord& r : records) {
    times.push_back(r.transmission_time_hr);
    routes.push_back(r.route);
    if (r.state == PacketState::Damaged) ++damaged;
  }
  summary.percent_error = percent_error(damaged, records.size());
  if (times.size() >= 2) {
    const SummaryStats stats = summarize(times);
    summary.time_mean_hr = stats.mean;
    summary.time_std_hr = stats.std;
    summary.time_sem_hr = stats.sem();
  } else {
    summary.time_mean_hr = mean_of(times);
  }
  summary.crm_hr = cumulative_running_mean(times);
  summary.most_frequent_route = most_frequent_path(routes);
  summary.most_frequent_count = static_cast<std::size_t>(
      std::count(routes.begin(), routes.end(), summary.most_frequent_route));
  return summary;
}

}  // namespace

RunResult run_packets(NetworkState network, const SimConfig& config, Random& rng) {
  validate(config);
  RunResult run;
  reset(network);
  run.network = network;
  for (auto& records : run.records) records.reserve(config.packet_count);

  for (std::size_t k = 0; k < config.packet_count; ++k) {
    reset(network);
    PacketResult packet =
        simulate_packet(network, rng, config.sigma_frac, k, config.step_budget_factor);
    run.degenerate_hops += packet.degenerate_hops;
    for (std::size_t p = 0; p < kAllProtocols.size(); ++p) {
      run.records[p].push_back(std::move(packet.records[p]));
    }
  }
  for (std::size_t p = 0; p < kAllProtocols.size(); ++p) {
    run.summaries[p] = summarize_run(kAllProtocols[p], run.records[p]);
  }
  return run;
}

RunResult run_simulation(const SimConfig& config, Random& rng) {
  validate(config);
  NetworkState network = build_network(place_nodes(config.network, rng), rng, config.network);
  return run_packets(std::move(network), config, rng);
}

std::vector<double> cumulative_running_mean(std::span<const double> samples) {
  if (samples.empty()) throw UsageError("cumulative_running_mean needs at least one sample");
  std::vector<double> out;
  out.reserve(samples.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    sum += samples[k];
    out.push_back(sum / static_cast<double>(k + 1));
  }
  return out;
}

}  // namespace dtn
