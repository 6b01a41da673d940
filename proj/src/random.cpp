#include "dtn/random.hpp"

#include <cmath>

#include "dtn/error.hpp"

namespace dtn {

double Random::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Random::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

// Marsaglia polar method; the second variate of each pair is cached.
double Random::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

double Random::normal(double mean, double stddev) {
  if (stddev == 0.0) return mean;
  return mean + stddev * standard_normal();
}

// Marsaglia-Tsang squeeze method; shapes below one use the u^(1/a) boost.
double Random::gamma(double shape) {
  if (!(shape > 0.0)) throw ConfigError("gamma shape must be positive");
  if (shape < 1.0) {
    const double u = uniform01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Random::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("beta shape parameters must be positive");
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index) {
  return splitmix64(master_seed + 0x9E3779B97F4A7C15ULL * (run_index + 1));
}

}  // namespace dtn
