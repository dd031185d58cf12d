#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace coxcss {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `counter` of a master seed; streams are independent of
/// execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

/// Portable draws on top of mt19937_64 (no implementation-defined
/// distributions, so replays are bit-identical across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Uniform double in [0, 1).
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Worker count for parallel trial loops (COXCSS_WORKERS, default hardware concurrency).
unsigned worker_count();

}  // namespace coxcss
