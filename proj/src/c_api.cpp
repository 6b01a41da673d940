#include "dtn_tradesim.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <fstream>
#include <iterator>
#include <new>
#include <string>

#include "dtn/error.hpp"
#include "dtn/study.hpp"

struct dtn_config {
  dtn::StudyConfig config;
};

struct dtn_study {
  dtn::StudyReport report;
};

namespace {

thread_local std::string g_last_error;

dtn_status fail(dtn_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
dtn_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return DTN_OK;
  } catch (const dtn::ConfigError& e) {
    return fail(DTN_ERR_CONFIG, e.what());
  } catch (const dtn::SimulationFault& e) {
    return fail(DTN_ERR_SIMULATION, e.what());
  } catch (const dtn::IoError& e) {
    return fail(DTN_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DTN_ERR_SIMULATION, "out of memory");
  } catch (const std::exception& e) {
    return fail(DTN_ERR_USAGE, e.what());
  }
}

bool valid_protocol(dtn_protocol p) {
  return p == DTN_BUNDLE_PROTOCOL || p == DTN_DISTANCE_DIJKSTRA || p == DTN_QUALITY_DIJKSTRA;
}

dtn_status null_argument(const char* what) {
  return fail(DTN_ERR_USAGE, std::string("null argument: ") + what);
}

}  // namespace

extern "C" {

const char* dtn_version(void) { return dtn::tool_version().data(); }

const char* dtn_last_error(void) { return g_last_error.c_str(); }

dtn_status dtn_config_create(dtn_config** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new dtn_config{}; });
}

void dtn_config_destroy(dtn_config* config) { delete config; }

dtn_status dtn_config_load_file(dtn_config* config, const char* path) {
  if (!config || !path) return null_argument("config/path");
  return guarded([&] {
    dtn::StudyConfig updated = config->config;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dtn::ConfigError(std::string("cannot read config file '") + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    dtn::apply_config_text(updated, text);
    config->config = std::move(updated);
  });
}

dtn_status dtn_config_set(dtn_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return null_argument("config/key/value");
  return guarded([&] { dtn::apply_setting(config->config, key, value); });
}

dtn_status dtn_config_validate(const dtn_config* config) {
  if (!config) return null_argument("config");
  return guarded([&] { dtn::validate(config->config); });
}

dtn_status dtn_config_describe(const dtn_config* config, char* buf, size_t cap,
                               size_t* needed) {
  if (!config) return null_argument("config");
  return guarded([&] {
    std::string text = "output_dir=" + config->config.output_dir.string() + "\n" +
                       dtn::describe(config->config);
    if (needed) *needed = text.size() + 1;
    if (buf && cap > 0) {
      const size_t n = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), n);
      buf[n] = '\0';
    }
  });
}

dtn_status dtn_study_run(const dtn_config* config, dtn_study** out) {
  if (!config || !out) return null_argument("config/out");
  return guarded([&] { *out = new dtn_study{dtn::run_study(config->config)}; });
}

void dtn_study_destroy(dtn_study* study) { delete study; }

dtn_status dtn_study_write(const dtn_study* study, const char* out_dir) {
  if (!study) return null_argument("study");
  return guarded([&] {
    dtn::write_report(study->report,
                      out_dir ? std::filesystem::path(out_dir) : study->report.config.output_dir);
  });
}

size_t dtn_study_run_count(const dtn_study* study) {
  return study ? study->report.runs.size() : 0;
}

size_t dtn_study_warning_count(const dtn_study* study) {
  return study ? study->report.warnings.size() : 0;
}

const char* dtn_study_warning(const dtn_study* study, size_t index) {
  if (!study || index >= study->report.warnings.size()) return nullptr;
  return study->report.warnings[index].c_str();
}

dtn_status dtn_study_metric_mean(const dtn_study* study, dtn_protocol protocol,
                                 dtn_metric metric, double* out) {
  if (!study || !out) return null_argument("study/out");
  if (!valid_protocol(protocol)) return fail(DTN_ERR_USAGE, "unknown protocol");
  if (metric != DTN_METRIC_PERCENT_ERROR && metric != DTN_METRIC_TRANSMISSION_TIME) {
    return fail(DTN_ERR_USAGE, "unknown metric");
  }
  return guarded([&] {
    *out = study->report.summary
               .at(static_cast<dtn::ProtocolKind>(protocol), static_cast<dtn::Metric>(metric))
               .mean;
  });
}

dtn_status dtn_study_mavf(const dtn_study* study, dtn_protocol protocol, int corrected,
                          double* out) {
  if (!study || !out) return null_argument("study/out");
  if (!valid_protocol(protocol)) return fail(DTN_ERR_USAGE, "unknown protocol");
  return guarded([&] {
    const auto& table = corrected ? study->report.decision_corrected : study->report.decision;
    *out = table.row(static_cast<dtn::ProtocolKind>(protocol)).mavf;
  });
}

dtn_status dtn_study_ranking(const dtn_study* study, int corrected, dtn_protocol out[3]) {
  if (!study || !out) return null_argument("study/out");
  return guarded([&] {
    const auto& ranking =
        corrected ? study->report.ranking_corrected : study->report.ranking;
    for (size_t i = 0; i < ranking.size() && i < 3; ++i) {
      out[i] = static_cast<dtn_protocol>(ranking[i]);
    }
  });
}

}  // extern "C"
