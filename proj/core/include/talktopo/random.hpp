#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace talktopo {

/// Seeds for independent components are derived from one run-level seed by
/// hashing a stream name and a key:
///
///   derive_seed(seed, "talk", i)   per-talk synthetic data
///   derive_seed(seed, "folds", 0)  fold assignment
///   derive_seed(seed, "model", j)  model initialisation / batch order
///
/// The mix is SplitMix64 over FNV-1a of the stream name, so every stream is
/// reproducible on its own.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t key = 0);

std::uint64_t splitmix64(std::uint64_t x);

/// Portable generator: mt19937_64 with distribution code written out here so
/// the values do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Box-Muller, one value per call).
  double normal();

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace talktopo
