#include "dtn/decision.hpp"

#include <algorithm>
#include <stdexcept>

#include "dtn/error.hpp"

namespace dtn {

const DecisionRow& DecisionTable::row(ProtocolKind protocol) const {
  auto it = std::find_if(rows.begin(), rows.end(),
                         [&](const DecisionRow& r) { return r.protocol == protocol; });
  if (it == rows.end()) {
    throw UsageError("protocol " + std::string(to_string(protocol)) + " not in table");
  }
  return *it;
}

double value_linear(double x, double worst, double best) {
  if (worst == best) throw DegenerateError("value scale has worst == best");
  return std::clamp((worst - x) / (worst - best), 0.0, 1.0);
}

double mavf_score(double v_percent_error, double v_transmission_time,
                  const SwingWeights& weights) {
  if (!(weights.percent_error > 0.0) || !(weights.transmission_time > 0.0)) {
    throw ConfigError("swing weights must be positive");
  }
  return (weights.percent_error * v_percent_error +
          weights.transmission_time * v_transmission_time) /
         (weights.percent_error + weights.transmission_time);
}

namespace {

// Every option is equally best on a metric with no spread.
double scaled_value(double x, double worst, double best) {
  return worst == best ? 1.0 : value_linear(x, worst, best);
}

}  // namespace

DecisionTable build_decision_table(std::span<const MetricMeans> means,
                                   const SwingWeights& weights) {
  if (means.empty()) throw UsageError("decision table needs at least one option");
  auto [pe_lo, pe_hi] = std::minmax_element(
      means.begin(), means.end(),
      [](const MetricMeans& a, const MetricMeans& b) { return a.percent_error < b.percent_error; });
  auto [tt_lo, tt_hi] = std::minmax_element(
      means.begin(), means.end(), [](const MetricMeans& a, const MetricMeans& b) {
        return a.transmission_time < b.transmission_time;
      });

  DecisionTable table;
  table.weights = weights;
  for (const MetricMeans& m : means) {
    DecisionRow row;
    row.protocol = m.protocol;
    row.percent_error_mean = m.percent_error;
    row.transmission_time_mean = m.transmission_time;
    row.v_percent_error = scaled_value(m.percent_error, pe_hi->percent_error, pe_lo->percent_error);
    row.v_transmission_time =
        scaled_value(m.transmission_time, tt_hi->transmission_time, tt_lo->transmission_time);
    row.mavf = mavf_score(row.v_percent_error, row.v_transmission_time, weights);
    table.rows.push_back(row);
  }
  return table;
}

DecisionTable practicality_correction(const DecisionTable& table, ProtocolKind baseline) {
  const double baseline_error = table.row(baseline).percent_error_mean;
  DecisionTable corrected = table;
  for (DecisionRow& row : corrected.rows) {
    if (row.percent_error_mean > baseline_error) {
      row.v_transmission_time = 0.0;
      row.mavf = mavf_score(row.v_percent_error, row.v_transmission_time, table.weights);
    }
  }
  return corrected;
}

std::vector<ProtocolKind> rank(const DecisionTable& table) {
  std::vector<DecisionRow> rows = table.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const DecisionRow& a, const DecisionRow& b) {
    if (a.mavf != b.mavf) return a.mavf > b.mavf;
    return a.percent_error_mean < b.percent_error_mean;
  });
  std::vector<ProtocolKind> order;
  for (const DecisionRow& r : rows) order.push_back(r.protocol);
  return order;
}

}  // namespace dtn
