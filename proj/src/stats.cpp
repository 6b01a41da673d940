#include "dtn/stats.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dtn/error.hpp"

namespace dtn {

double SummaryStats::sem() const { return std / std::sqrt(static_cast<double>(n)); }

double mean_of(std::span<const double> samples) {
  if (samples.empty()) throw UsageError("mean of an empty sample");
  return std::accumulate(samples.begin(), samples.end(), 0.0) /
         static_cast<double>(samples.size());
}

SummaryStats summarize(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw UsageError("summarize needs at least two samples, got " +
                     std::to_string(samples.size()));
  }
  const double mean = mean_of(samples);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(samples.size() - 1)), samples.size()};
}

namespace {

// Stop once a continued-fraction factor changes h by less than this.
constexpr double kConvergence = 1e-13;

// Continued fraction for I_x(a, b), modified Lentz evaluation.
double beta_continued_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr int kMaxIterations = 10000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kConvergence) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw UsageError("incomplete beta needs positive shapes");
  if (!(x >= 0.0 && x <= 1.0)) throw UsageError("incomplete beta argument outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double student_t_upper_tail(double t, double df) {
  if (!(df > 0.0)) throw UsageError("degrees of freedom must be positive");
  if (std::isnan(t)) throw UsageError("t statistic is NaN");
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(x, 0.5 * df, 0.5);
  return t >= 0.0 ? tail : 1.0 - tail;
}

TTestResult welch_t(const SummaryStats& first, const SummaryStats& second, double alpha) {
  if (first.n < 2 || second.n < 2) throw UsageError("welch_t needs n >= 2 in both samples");
  const double v1 = first.std * first.std / static_cast<double>(first.n);
  const double v2 = second.std * second.std / static_cast<double>(second.n);
  if (v1 + v2 == 0.0) throw DegenerateError("welch_t: both samples have zero variance");

  TTestResult result;
  result.t = (first.mean - second.mean) / std::sqrt(v1 + v2);
  result.df = (v1 + v2) * (v1 + v2) /
              (v1 * v1 / static_cast<double>(first.n - 1) +
               v2 * v2 / static_cast<double>(second.n - 1));
  result.p = student_t_upper_tail(std::fabs(result.t), result.df);
  result.significant = result.p < alpha;
  return result;
}

std::string_view to_string(Metric metric) {
  return metric == Metric::PercentError ? "percent_error" : "transmission_time";
}

const MetricCell& StudySummary::at(ProtocolKind protocol, Metric metric) const {
  return cells[static_cast<std::size_t>(protocol)][static_cast<std::size_t>(metric)];
}

MetricCell& StudySummary::at(ProtocolKind protocol, Metric metric) {
  return cells[static_cast<std::size_t>(protocol)][static_cast<std::size_t>(metric)];
}

StudySummary summarize_study(
    const std::array<std::array<std::vector<double>, 2>, 3>& values) {
  StudySummary study;
  study.run_count = values[0][0].size();
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t m = 0; m < 2; ++m) {
      const auto& v = values[p][m];
      if (v.size() != study.run_count) throw UsageError("ragged per-run values");
      MetricCell& cell = study.cells[p][m];
      cell.mean = mean_of(v);
      if (v.size() >= 2) cell.stats = summarize(v);
    }
  }
  return study;
}

const std::optional<TTestResult>& SignificanceMatrix::at(Metric metric, ProtocolKind a,
                                                          ProtocolKind b) const {
  return cells[static_cast<std::size_t>(metric)][static_cast<std::size_t>(a)]
              [static_cast<std::size_t>(b)];
}

SignificanceMatrix significance_matrix(const StudySummary& study, double alpha) {
  if (study.run_count < 2) throw UsageError("t-tests need at least two runs");
  SignificanceMatrix matrix;
  for (Metric metric : kAllMetrics) {
    for (ProtocolKind a : kAllProtocols) {
      for (ProtocolKind b : kAllProtocols) {
        if (a == b) continue;
        const auto& sa = study.at(a, metric).stats;
        const auto& sb = study.at(b, metric).stats;
        try {
          matrix.cells[static_cast<std::size_t>(metric)][static_cast<std::size_t>(a)]
                      [static_cast<std::size_t>(b)] = welch_t(*sa, *sb, alpha);
        } catch (const DegenerateError&) {
          // Two zero-variance samples: no test is defined, leave the cell empty.
        }
      }
    }
  }
  return matrix;
}

}  // namespace dtn
