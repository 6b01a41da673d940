// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dtn/decision.hpp"
#include "dtn/network.hpp"
#include "dtn/random.hpp"
#include "dtn/routing.hpp"
#include "dtn/simulation.hpp"
#include "dtn/stats.hpp"
#include "dtn/study.hpp"

using namespace dtn;
using P = ProtocolKind;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// end_to_end_km / c in hours, about 1.17675.
constexpr double kStraightLineHr = 1.27e9 / PhysicalConstants::kSpeedOfLightKmPerS / 3600.0;
constexpr double kLowerBoundHr = 1.1767;

std::vector<StudyReport> g_studies;  // 20 default studies shared by criteria 4 and 6

const std::vector<StudyReport>& default_studies() {
  if (g_studies.empty()) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      StudyConfig config;
      config.sim.seed = seed;
      g_studies.push_back(run_study(config));
    }
  }
  return g_studies;
}

Outcome decision_exactness() {
  const std::vector<MetricMeans> means = {{P::BundleProtocol, 56.440, 3.120},
                                          {P::DistanceDijkstra, 64.200, 1.189},
                                          {P::QualityDijkstra, 41.040, 1.820}};
  const DecisionTable raw = build_decision_table(means);
  const DecisionTable fixed = practicality_correction(raw, P::BundleProtocol);
  struct Cell {
    P p;
    double v_pe, v_tt, mavf;
  };
  const Cell expected[] = {{P::BundleProtocol, 0.33506, 0, 0.279217},
                           {P::DistanceDijkstra, 0, 1, 0.166667},
                           {P::QualityDijkstra, 1, 0.672774, 0.945462}};
  double worst = 0.0;
  for (const Cell& c : expected) {
    const DecisionRow& r = raw.row(c.p);
    worst = std::max({worst, std::fabs(r.v_percent_error - c.v_pe),
                      std::fabs(r.v_transmission_time - c.v_tt), std::fabs(r.mavf - c.mavf)});
  }
  worst = std::max(worst, std::fabs(fixed.row(P::DistanceDijkstra).mavf - 0.0));
  return {worst <= 1e-3, fmt("max |error| over decision cells = %.2e (tol 1e-3)", worst)};
}

Outcome ttest_exactness() {
  auto s = [](double mean, double std) { return SummaryStats{mean, std, 5}; };
  StudySummary study;
  study.run_count = 5;
  const SummaryStats cells[3][2] = {{s(56.440, 7.410), s(3.120, 0.684)},
                                    {s(64.200, 4.864), s(1.189, 0.004)},
                                    {s(41.040, 4.498), s(1.820, 0.280)}};
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t m = 0; m < 2; ++m) study.cells[p][m] = {cells[p][m].mean, cells[p][m]};
  }
  const SignificanceMatrix matrix = significance_matrix(study);

  const double p_bd = matrix.at(Metric::TransmissionTime, P::BundleProtocol, P::DistanceDijkstra)->p;
  const double p_bq = matrix.at(Metric::TransmissionTime, P::BundleProtocol, P::QualityDijkstra)->p;
  const double rel_bd = std::fabs(p_bd - 0.00170) / 0.00170;
  const double rel_bq = std::fabs(p_bq - 0.00500) / 0.00500;

  // Expected p-values; significance is p < 0.05.
  struct Expected {
    Metric m;
    P a, b;
    double p;
  };
  const Expected expected_p[] = {
      {Metric::PercentError, P::BundleProtocol, P::DistanceDijkstra, 0.0914},
      {Metric::PercentError, P::BundleProtocol, P::QualityDijkstra, 0.0102},
      {Metric::PercentError, P::DistanceDijkstra, P::QualityDijkstra, 8.758e-05},
      {Metric::TransmissionTime, P::BundleProtocol, P::DistanceDijkstra, 0.00170},
      {Metric::TransmissionTime, P::BundleProtocol, P::QualityDijkstra, 0.00500},
      {Metric::TransmissionTime, P::DistanceDijkstra, P::QualityDijkstra, 0.00437}};
  int matches = 0;
  for (const Expected& cell : expected_p) {
    matches += matrix.at(cell.m, cell.a, cell.b)->significant == (cell.p < 0.05);
  }
  return {rel_bd <= 0.10 && rel_bq <= 0.10 && matches >= 5,
          fmt("p(bundle,distance)=%.5f (rel %.1f%%), p(bundle,quality)=%.5f (rel %.1f%%), "
              "pattern %d/6",
              p_bd, 100 * rel_bd, p_bq, 100 * rel_bq, matches)};
}

Outcome physical_lower_bound() {
  StudyConfig config;
  config.sim.seed = 1;
  const StudyReport report = run_study(config);
  std::size_t total = 0, below = 0;
  double min_seen = std::numeric_limits<double>::infinity();
  for (const RunResult& run : report.runs) {
    for (const auto& records : run.records) {
      for (const PacketRecord& r : records) {
        ++total;
        below += r.transmission_time_hr < kLowerBoundHr;
        min_seen = std::min(min_seen, r.transmission_time_hr);
      }
    }
  }
  const double distance_mean = report.summary.at(P::DistanceDijkstra, Metric::TransmissionTime).mean;
  const bool bracket = distance_mean >= kLowerBoundHr && distance_mean <= 1.30;
  return {below == 0 && bracket,
          fmt("%zu/%zu times below %.4f hr (min %.5f, bound %.5f); distance mean %.4f hr in "
              "[1.1767, 1.30]",
              below, total, kLowerBoundHr, min_seen, kStraightLineHr, distance_mean)};
}

Outcome protocol_ordering() {
  int quality_lowest_error = 0, distance_fastest = 0, ranking_ok = 0;
  for (const StudyReport& r : default_studies()) {
    auto pe = [&](P p) { return r.summary.at(p, Metric::PercentError).mean; };
    auto tt = [&](P p) { return r.summary.at(p, Metric::TransmissionTime).mean; };
    quality_lowest_error +=
        pe(P::QualityDijkstra) < pe(P::BundleProtocol) && pe(P::QualityDijkstra) < pe(P::DistanceDijkstra);
    distance_fastest +=
        tt(P::DistanceDijkstra) < tt(P::BundleProtocol) && tt(P::DistanceDijkstra) < tt(P::QualityDijkstra);
    ranking_ok += r.ranking_corrected ==
                  std::vector<P>{P::QualityDijkstra, P::BundleProtocol, P::DistanceDijkstra};
  }
  const int n = static_cast<int>(default_studies().size());
  const bool pass = quality_lowest_error >= 0.80 * n && distance_fastest >= 0.95 * n &&
                    ranking_ok >= 0.80 * n;
  return {pass, fmt("quality lowest error %d/%d (>=80%%), distance fastest %d/%d (>=95%%), "
                    "corrected ranking quality>bundle>distance %d/%d (>=80%%)",
                    quality_lowest_error, n, distance_fastest, n, ranking_ok, n)};
}

double brute_force(const NetworkState& net, CostKind kind, NodeId src, NodeId dst) {
  const std::size_t n = net.node_count();
  double best = std::numeric_limits<double>::infinity();
  std::vector<NodeId> path{src};
  std::vector<bool> used(n, false);
  used[src] = true;
  std::function<void(double)> extend = [&](double cost) {
    if (path.back() == dst) {
      best = std::min(best, cost);
      return;
    }
    for (NodeId v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      const double step = edge_cost(net, path.back(), v, kind);
      path.push_back(v);
      extend(cost + step);
      path.pop_back();
      used[v] = false;
    }
  };
  extend(0.0);
  return best;
}

Outcome dijkstra_oracle() {
  int checked = 0, agree = 0;
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    Random rng(0xD1E5 + seed);
    NetworkConfig config;
    config.relay_count = 1 + seed % 5;  // 3..7 nodes
    NetworkState net = build_network(place_nodes(config, rng), rng, config);
    perturb(net, rng, 0.05);
    const NodeId n = static_cast<NodeId>(net.node_count());
    const NodeId src = static_cast<NodeId>(rng.next_u64() % n);
    const NodeId dst = static_cast<NodeId>((src + 1 + rng.next_u64() % (n - 1)) % n);
    for (CostKind kind : {CostKind::TransmissionTime, CostKind::QualityComplement}) {
      const double got = route_cost(net, dijkstra_path(net, kind, src, dst), kind);
      const double want = brute_force(net, kind, src, dst);
      ++checked;
      agree += std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want));
    }
  }
  return {agree == checked && checked >= 400,
          fmt("%d/%d cost comparisons agree over 250 networks of 3-7 nodes", agree, checked)};
}

Outcome bundle_invariant() {
  std::size_t routes = 0, violations = 0;
  for (const StudyReport& r : default_studies()) {
    for (const RunResult& run : r.runs) {
      const auto& records = run.records[static_cast<std::size_t>(P::BundleProtocol)];
      const std::size_t n = run.network.node_count();
      for (const PacketRecord& rec : records) {
        ++routes;
        const auto& nodes = rec.route.nodes;
        bool ok = nodes.size() - 1 <= n - 1;
        for (std::size_t i = 1; i < nodes.size() && ok; ++i) {
          ok = run.network.geometric_distance(nodes[i], kGroundId) <
               run.network.geometric_distance(nodes[i - 1], kGroundId);
        }
        violations += !ok;
      }
    }
  }
  return {routes >= 10000 && violations == 0,
          fmt("%zu bundle routes, %zu violations", routes, violations)};
}

Outcome stochastic_calibration() {
  Random rng(7);
  constexpr int kDraws = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double q = sample_quality(rng, 3.0, 2.0);
    sum += q;
    sum_sq += q * q;
  }
  const double mean = sum / kDraws;
  const double var = (sum_sq - kDraws * mean * mean) / (kDraws - 1);

  std::vector<Node> nodes = {{kProbeId, NodeKind::Probe, {1.27e9, 0}},
                             {kGroundId, NodeKind::Ground, {0, 0}},
                             {2, NodeKind::Relay, {6.0e8, 2.0e7}}};
  const double q1 = 0.7, q2 = 0.85;
  // Pair order: (0,1), (0,2), (1,2).
  const std::vector<double> qualities = {0.5, q1, q2};
  SimConfig config;
  config.packet_count = 10000;
  config.sigma_frac = 0.0;
  Random sim_rng(11);
  const RunResult run = run_packets(NetworkState(nodes, qualities), config, sim_rng);
  const double expected = q1 * q2;
  const double band = 3.0 * std::sqrt(expected * (1 - expected) / 10000.0);
  double worst = 0.0;
  for (const RunSummary& s : run.summaries) {
    worst = std::max(worst, std::fabs((100.0 - s.percent_error) / 100.0 - expected));
  }
  const bool pass = std::fabs(mean - 0.6) <= 0.005 && std::fabs(var - 0.04) <= 0.003 &&
                    worst <= band;
  return {pass, fmt("beta mean %.4f, var %.4f; 2-hop intact fraction off by %.4f (3 sigma %.4f)",
                    mean, var, worst, band)};
}

Outcome crm_stability() {
  SimConfig config;
  config.seed = 1;
  Random rng(derive_run_seed(config.seed, 0));
  const RunResult run = run_simulation(config, rng);
  double worst = 0.0;
  std::string per;
  for (const RunSummary& s : run.summaries) {
    const double change = std::fabs(s.crm_hr[499] - s.crm_hr[249]) / s.crm_hr[249];
    worst = std::max(worst, change);
    per += fmt(" %s=%.2f%%", std::string(to_string(s.protocol)).c_str(), 100 * change);
  }
  return {worst < 0.05, "CRM change 250->500:" + per + " (< 5%)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  StudyConfig config;
  config.sim.seed = 42;
  const fs::path root = fs::temp_directory_path() / "dtn_acceptance_determinism";
  fs::remove_all(root);
  const auto files = write_report(run_study(config), root / "a");
  write_report(run_study(config), root / "b");
  std::size_t identical = 0;
  for (const std::string& f : files) identical += slurp(root / "a" / f) == slurp(root / "b" / f);
  fs::remove_all(root);
  return {identical == files.size(),
          fmt("%zu/%zu output files byte-identical", identical, files.size())};
}

Outcome performance() {
  SimConfig config;
  Random rng(derive_run_seed(99, 0));
  const auto start = std::chrono::steady_clock::now();
  run_simulation(config, rng);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {seconds < 10.0, fmt("one 500-packet run took %.3f s (< 10 s)", seconds)};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"AC1 decision-pipeline exactness", decision_exactness},
      {"AC2 t-test exactness on fixed inputs", ttest_exactness},
      {"AC3 physical lower bound", physical_lower_bound},
      {"AC4 protocol ordering over 20 studies", protocol_ordering},
      {"AC5 Dijkstra oracle equivalence", dijkstra_oracle},
      {"AC6 bundle monotone progress", bundle_invariant},
      {"AC7 stochastic calibration", stochastic_calibration},
      {"AC8 CRM stability", crm_stability},
      {"AC9 determinism", determinism},
      {"AC10 performance", performance},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
