#include "dtn/study.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>

#include "dtn/error.hpp"
#include "dtn/random.hpp"

#ifndef DTN_TRADESIM_VERSION
#define DTN_TRADESIM_VERSION "0.0.0"
#endif

namespace dtn {

std::string_view tool_version() { return DTN_TRADESIM_VERSION; }

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Both: return "both";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) +
                    "': expected " + std::string(expected));
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "a non-negative integer");
  }
  return out;
}

std::size_t parse_count(std::string_view key, std::string_view value, std::int64_t min) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value, "an integer");
  }
  if (out < min) {
    throw ConfigError("value " + std::string(value) + " for key '" + std::string(key) +
                      "' is out of range: must be >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(out);
}

double parse_real(std::string_view key, std::string_view value, double min, bool inclusive) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out)) {
    bad_value(key, value, "a finite number");
  }
  if (inclusive ? out < min : out <= min) {
    throw ConfigError("value " + std::string(value) + " for key '" + std::string(key) +
                      "' is out of range: must be " + (inclusive ? ">= " : "> ") +
                      std::to_string(min));
  }
  return out;
}

std::string canonical_key(std::string_view key) {
  std::string k(key);
  std::replace(k.begin(), k.end(), '-', '_');
  if (k == "packets") return "packet_count";
  if (k == "runs") return "run_count";
  if (k == "relays") return "relay_count";
  if (k == "out") return "output_dir";
  return k;
}

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void apply_setting(StudyConfig& config, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = canonical_key(trim(raw_key));
  const std::string_view value = trim(raw_value);
  SimConfig& sim = config.sim;

  if (key == "packet_count") {
    sim.packet_count = parse_count(key, value, 1);
  } else if (key == "run_count") {
    sim.run_count = parse_count(key, value, 1);
  } else if (key == "relay_count") {
    sim.network.relay_count = parse_count(key, value, 1);
  } else if (key == "sigma_frac") {
    sim.sigma_frac = parse_real(key, value, 0.0, true);
  } else if (key == "beta_a") {
    sim.network.beta_a = parse_real(key, value, 0.0, false);
  } else if (key == "beta_b") {
    sim.network.beta_b = parse_real(key, value, 0.0, false);
  } else if (key == "seed") {
    sim.seed = parse_u64(key, value);
  } else if (key == "end_to_end_km") {
    sim.network.constants.end_to_end_km = parse_real(key, value, 0.0, false);
  } else if (key == "min_coord_km") {
    sim.network.constants.min_coord_km = parse_real(key, value, 0.0, false);
  } else if (key == "step_budget_factor") {
    sim.step_budget_factor = parse_count(key, value, 1);
  } else if (key == "output_dir") {
    if (value.empty()) bad_value(key, value, "a directory path");
    config.output_dir = std::string(value);
  } else if (key == "format") {
    if (value == "csv") {
      config.format = OutputFormat::Csv;
    } else if (value == "json") {
      config.format = OutputFormat::Json;
    } else if (value == "both") {
      config.format = OutputFormat::Both;
    } else {
      bad_value(key, value, "csv, json or both");
    }
  } else if (key == "baseline") {
    try {
      config.baseline = parse_protocol(value);
    } catch (const ConfigError&) {
      bad_value(key, value, "bundle, distance or quality");
    }
  } else if (key == "weight_percent_error") {
    config.weights.percent_error = parse_real(key, value, 0.0, false);
  } else if (key == "weight_transmission_time") {
    config.weights.transmission_time = parse_real(key, value, 0.0, false);
  } else if (key == "threads") {
    config.threads = static_cast<unsigned>(parse_count(key, value, 0));
  } else {
    throw ConfigError("unknown configuration key '" + std::string(trim(raw_key)) + "'");
  }
}

void apply_config_text(StudyConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" +
                        std::string(line) + "'");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

void validate(const StudyConfig& config) {
  validate(config.sim);
  if (config.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (!(config.weights.percent_error > 0.0) || !(config.weights.transmission_time > 0.0)) {
    throw ConfigError("swing weights must be positive");
  }
}

StudyConfig load_config(const std::optional<std::filesystem::path>& path,
                        const std::vector<std::pair<std::string, std::string>>& overrides) {
  StudyConfig config;
  if (path) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path->string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(config, text.str());
  }
  for (const auto& [key, value] : overrides) apply_setting(config, key, value);
  validate(config);
  return config;
}

std::string describe(const StudyConfig& config) {
  const SimConfig& sim = config.sim;
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out.append(key).append("=").append(value).append("\n");
  };
  line("packet_count", std::to_string(sim.packet_count));
  line("run_count", std::to_string(sim.run_count));
  line("relay_count", std::to_string(sim.network.relay_count));
  line("sigma_frac", real(sim.sigma_frac));
  line("beta_a", real(sim.network.beta_a));
  line("beta_b", real(sim.network.beta_b));
  line("seed", std::to_string(sim.seed));
  line("end_to_end_km", real(sim.network.constants.end_to_end_km));
  line("min_coord_km", real(sim.network.constants.min_coord_km));
  line("step_budget_factor", std::to_string(sim.step_budget_factor));
  line("format", std::string(to_string(config.format)));
  line("baseline", std::string(to_string(config.baseline)));
  line("weight_percent_error", real(config.weights.percent_error));
  line("weight_transmission_time", real(config.weights.transmission_time));
  return out;
}

std::uint64_t config_hash(const StudyConfig& config) {
  // 64-bit FNV-1a over the canonical listing.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : describe(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::vector<RunResult> simulate_runs(const StudyConfig& config) {
  const std::size_t runs = config.sim.run_count;
  std::vector<RunResult> results(runs);
  std::vector<std::exception_ptr> errors(runs);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < runs; k = next++) {
      try {
        Random rng(derive_run_seed(config.sim.seed, k));
        results[k] = run_simulation(config.sim, rng);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  unsigned threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, runs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (std::size_t k = 0; k < runs; ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const SimulationFault& e) {
      throw SimulationFault("run " + std::to_string(k) + ": " + e.what());
    } catch (const std::exception& e) {
      throw SimulationFault("run " + std::to_string(k) + ": " + e.what());
    }
  }
  return results;
}

}  // namespace

StudyReport run_study(const StudyConfig& config) {
  validate(config);
  StudyReport report;
  report.config = config;
  report.runs = simulate_runs(config);

  std::array<std::array<std::vector<double>, 2>, 3> values;
  for (const RunResult& run : report.runs) {
    for (std::size_t p = 0; p < 3; ++p) {
      values[p][0].push_back(run.summaries[p].percent_error);
      values[p][1].push_back(run.summaries[p].time_mean_hr);
    }
  }
  for (std::size_t k = 0; k < report.runs.size(); ++k) {
    if (report.runs[k].degenerate_hops > 0) {
      report.warnings.push_back("run " + std::to_string(k) + ": " +
                                std::to_string(report.runs[k].degenerate_hops) +
                                " bundle hops had no closer neighbour and fell back to the "
                                "destination");
    }
  }

  report.summary = summarize_study(values);
  if (config.sim.run_count >= 2) {
    report.ttests = significance_matrix(report.summary);
  } else {
    report.warnings.push_back("t-tests skipped: run_count < 2");
  }

  std::vector<MetricMeans> means;
  for (ProtocolKind p : kAllProtocols) {
    means.push_back({p, report.summary.at(p, Metric::PercentError).mean,
                     report.summary.at(p, Metric::TransmissionTime).mean});
  }
  report.decision = build_decision_table(means, config.weights);
  report.decision_corrected = practicality_correction(report.decision, config.baseline);
  report.ranking = rank(report.decision);
  report.ranking_corrected = rank(report.decision_corrected);
  report.provenance = {config.sim.seed, config_hash(config), std::string(tool_version())};
  return report;
}

}  // namespace dtn
