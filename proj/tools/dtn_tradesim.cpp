// dtn-tradesim: command-line front end over the C API.

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dtn_tradesim.h"

namespace {

struct ConfigHandle {
  dtn_config* ptr = nullptr;
  ~ConfigHandle() { dtn_config_destroy(ptr); }
};

struct StudyHandle {
  dtn_study* ptr = nullptr;
  ~StudyHandle() { dtn_study_destroy(ptr); }
};

int report_error(dtn_status status) {
  std::fprintf(stderr, "dtn-tradesim: error: %s\n", dtn_last_error());
  return static_cast<int>(status);
}

// Loads the optional config file, then applies flag overrides.
dtn_status build_config(ConfigHandle& config, const std::string& path,
                        const std::vector<std::pair<std::string, std::string>>& overrides) {
  dtn_status status = dtn_config_create(&config.ptr);
  if (status != DTN_OK) return status;
  if (!path.empty()) {
    status = dtn_config_load_file(config.ptr, path.c_str());
    if (status != DTN_OK) return status;
  }
  for (const auto& [key, value] : overrides) {
    status = dtn_config_set(config.ptr, key.c_str(), value.c_str());
    if (status != DTN_OK) return status;
  }
  return dtn_config_validate(config.ptr);
}

std::string describe(const ConfigHandle& config) {
  size_t needed = 0;
  dtn_config_describe(config.ptr, nullptr, 0, &needed);
  std::string text(needed, '\0');
  dtn_config_describe(config.ptr, text.data(), text.size(), &needed);
  text.resize(needed > 0 ? needed - 1 : 0);
  return text;
}

const char* protocol_name(dtn_protocol p) {
  switch (p) {
    case DTN_BUNDLE_PROTOCOL: return "bundle_protocol";
    case DTN_DISTANCE_DIJKSTRA: return "distance_dijkstra";
    case DTN_QUALITY_DIJKSTRA: return "quality_dijkstra";
  }
  return "unknown";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo trade study of DTN routing protocols"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dtn_version());

  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::optional<std::string> seed, runs, packets, relays, sigma, beta_a, beta_b, out, format;

  CLI::App* run = app.add_subcommand("run", "Run a study and write the report");
  run->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "master seed");
  run->add_option("--runs", runs, "independent networks to simulate");
  run->add_option("--packets", packets, "packets per run");
  run->add_option("--relays", relays, "relay satellites per network");
  run->add_option("--sigma-frac", sigma, "per-step perturbation, fraction of default");
  run->add_option("--beta-a", beta_a, "link-quality beta shape a");
  run->add_option("--beta-b", beta_b, "link-quality beta shape b");
  run->add_option("--out", out, "output directory");
  run->add_option("--format", format, "csv, json or both");

  CLI::App* validate = app.add_subcommand("validate", "Check a config file and print it");
  validate->add_option("--config", config_path, "key=value config file")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(DTN_ERR_CONFIG);
  }

  const std::pair<const char*, std::optional<std::string>*> flags[] = {
      {"seed", &seed},         {"run_count", &runs},   {"packet_count", &packets},
      {"relay_count", &relays}, {"sigma_frac", &sigma}, {"beta_a", &beta_a},
      {"beta_b", &beta_b},     {"output_dir", &out},   {"format", &format}};
  for (const auto& [key, value] : flags) {
    if (*value) overrides.emplace_back(key, **value);
  }

  ConfigHandle config;
  if (dtn_status status = build_config(config, config_path, overrides); status != DTN_OK) {
    return report_error(status);
  }

  if (*validate) {
    std::printf("%s", describe(config).c_str());
    return 0;
  }

  StudyHandle study;
  if (dtn_status status = dtn_study_run(config.ptr, &study.ptr); status != DTN_OK) {
    return report_error(status);
  }
  for (size_t i = 0; i < dtn_study_warning_count(study.ptr); ++i) {
    std::fprintf(stderr, "dtn-tradesim: warning: %s\n", dtn_study_warning(study.ptr, i));
  }
  if (dtn_status status = dtn_study_write(study.ptr, nullptr); status != DTN_OK) {
    return report_error(status);
  }

  dtn_protocol order[3];
  dtn_study_ranking(study.ptr, 1, order);
  std::printf("%-20s %14s %18s %10s\n", "protocol", "percent_error", "transmission_hr",
              "mavf");
  for (dtn_protocol p : order) {
    double pe = 0, tt = 0, mavf = 0;
    dtn_study_metric_mean(study.ptr, p, DTN_METRIC_PERCENT_ERROR, &pe);
    dtn_study_metric_mean(study.ptr, p, DTN_METRIC_TRANSMISSION_TIME, &tt);
    dtn_study_mavf(study.ptr, p, 1, &mavf);
    std::printf("%-20s %14.3f %18.4f %10.6f\n", protocol_name(p), pe, tt, mavf);
  }
  return 0;
}
