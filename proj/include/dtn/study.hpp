#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtn/decision.hpp"
#include "dtn/simulation.hpp"
#include "dtn/stats.hpp"

namespace dtn {

enum class OutputFormat { Csv, Json, Both };

std::string_view to_string(OutputFormat format);

struct StudyConfig {
  SimConfig sim;
  std::filesystem::path output_dir = "dtn-out";
  OutputFormat format = OutputFormat::Csv;
  ProtocolKind baseline = ProtocolKind::BundleProtocol;
  SwingWeights weights;
  // Worker threads for independent runs; 0 picks hardware concurrency.
  unsigned threads = 0;
};

// Applies one key=value setting. Unknown keys and unparsable or out-of-range
// values throw ConfigError naming the key.
void apply_setting(StudyConfig& config, std::string_view key, std::string_view value);

// Flat key=value text; '#' starts a comment, blank lines are ignored.
void apply_config_text(StudyConfig& config, std::string_view text);

void validate(const StudyConfig& config);

// File settings first, then overrides in order. The result is validated.
StudyConfig load_config(const std::optional<std::filesystem::path>& path,
                        const std::vector<std::pair<std::string, std::string>>& overrides = {});

// Canonical key=value listing of every setting that affects results
// (the output directory is excluded).
std::string describe(const StudyConfig& config);

std::uint64_t config_hash(const StudyConfig& config);

struct Provenance {
  std::uint64_t master_seed = 0;
  std::uint64_t config_hash = 0;
  std::string tool_version;
};

struct StudyReport {
  StudyConfig config;
  std::vector<RunResult> runs;
  StudySummary summary;
  std::optional<SignificanceMatrix> ttests;  // absent when run_count < 2
  DecisionTable decision;
  DecisionTable decision_corrected;
  std::vector<ProtocolKind> ranking;
  std::vector<ProtocolKind> ranking_corrected;
  std::vector<std::string> warnings;
  Provenance provenance;
};

std::string_view tool_version();

// Simulates config.sim.run_count independent networks and assembles every
// report table. Deterministic given the master seed.
StudyReport run_study(const StudyConfig& config);

// Writes the report files into `dir` (created if needed) and returns the
// emitted file names, manifest last.
std::vector<std::string> write_report(const StudyReport& report,
                                      const std::filesystem::path& dir);

}  // namespace dtn
