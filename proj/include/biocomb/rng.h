#pragma once

#include <cstdint>
#include <random>

namespace biocomb {

/// Seeded random stream used by every generator in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard (the 10000th draw from a default-seeded engine is
/// 9981545732273789042). Uniform and normal variates are derived here rather
/// than through std::*_distribution, whose algorithms are implementation
/// defined, so a seed yields the same panels on every conforming toolchain.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via the Marsaglia polar method.
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the child stream with the given index: splitmix64 applied to
/// parent ^ splitmix64(index + 1). Replication r of an experiment with seed s
/// always uses child_seed(s, r), independent of scheduling.
std::uint64_t child_seed(std::uint64_t parent, std::uint64_t index);

}  // namespace biocomb
