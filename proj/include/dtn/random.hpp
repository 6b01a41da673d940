#pragma once

#include <cstdint>
#include <random>

namespace dtn {

// Seedable random stream. The engine is mt19937_64 and every variate is
// produced by code in this file's implementation, so a seed yields the same
// sequence with any standard library.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();
  double uniform(double lo, double hi);
  double normal(double mean, double stddev);
  double gamma(double shape);
  double beta(double a, double b);

 private:
  double standard_normal();

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Pure mixing function used to derive independent per-run seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run_index);

}  // namespace dtn
