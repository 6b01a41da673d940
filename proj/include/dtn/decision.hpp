#pragma once

#include <array>
#include <span>
#include <vector>

#include "dtn/routing.hpp"

namespace dtn {

struct SwingWeights {
  double percent_error = 100.0;
  double transmission_time = 20.0;
};

struct DecisionRow {
  ProtocolKind protocol = ProtocolKind::BundleProtocol;
  double percent_error_mean = 0.0;
  double transmission_time_mean = 0.0;
  double v_percent_error = 0.0;
  double v_transmission_time = 0.0;
  double mavf = 0.0;
};

struct DecisionTable {
  std::vector<DecisionRow> rows;
  SwingWeights weights;

  const DecisionRow& row(ProtocolKind protocol) const;
};

// Linear single-attribute value: best -> 1, worst -> 0.
double value_linear(double x, double worst, double best);

double mavf_score(double v_percent_error, double v_transmission_time,
                  const SwingWeights& weights = {});

struct MetricMeans {
  ProtocolKind protocol;
  double percent_error;
  double transmission_time;
};

// Scales each metric between the observed worst and best options (both lower
// is better) and aggregates with the swing weights.
DecisionTable build_decision_table(std::span<const MetricMeans> means,
                                   const SwingWeights& weights = {});

// Options whose percent error is worse than the baseline's lose all
// transmission-time value.
DecisionTable practicality_correction(const DecisionTable& table, ProtocolKind baseline);

// Descending MAVF; ties go to the lower percent-error mean.
std::vector<ProtocolKind> rank(const DecisionTable& table);

}  // namespace dtn
