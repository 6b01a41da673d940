#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "dtn/routing.hpp"

namespace dtn {

struct SummaryStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, n - 1 divisor
  std::size_t n = 0;

  double sem() const;
};

// Requires at least two samples.
SummaryStats summarize(std::span<const double> samples);

double mean_of(std::span<const double> samples);

// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double x, double a, double b);

// P(T > t) for Student's t with `df` degrees of freedom (df may be fractional).
double student_t_upper_tail(double t, double df);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 0.0;  // one-tailed, in the direction of the observed difference
  bool significant = false;
};

TTestResult welch_t(const SummaryStats& first, const SummaryStats& second,
                    double alpha = 0.05);

enum class Metric { PercentError, TransmissionTime };

inline constexpr std::array<Metric, 2> kAllMetrics = {Metric::PercentError,
                                                      Metric::TransmissionTime};

std::string_view to_string(Metric metric);

struct MetricCell {
  double mean = 0.0;
  // Present when the cell holds at least two runs.
  std::optional<SummaryStats> stats;
};

// Per protocol (kAllProtocols order), per metric (kAllMetrics order).
struct StudySummary {
  std::array<std::array<MetricCell, 2>, 3> cells;
  std::size_t run_count = 0;

  const MetricCell& at(ProtocolKind protocol, Metric metric) const;
  MetricCell& at(ProtocolKind protocol, Metric metric);
};

// Builds a StudySummary from per-run values laid out as values[p][m][run].
StudySummary summarize_study(
    const std::array<std::array<std::vector<double>, 2>, 3>& values);

// One entry per ordered protocol pair; the diagonal is empty, as is any cell
// whose two samples both have zero variance.
struct SignificanceMatrix {
  std::array<std::array<std::array<std::optional<TTestResult>, 3>, 3>, 2> cells;

  const std::optional<TTestResult>& at(Metric metric, ProtocolKind a, ProtocolKind b) const;
};

// Requires run_count >= 2.
SignificanceMatrix significance_matrix(const StudySummary& study, double alpha = 0.05);

}  // namespace dtn
