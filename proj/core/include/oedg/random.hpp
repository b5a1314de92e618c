#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace oedg {

/// Counter-based generator: the i-th draw is splitmix64(key + i * golden).
/// Every "at random" step of the algorithms consumes from one stream in
/// program order, so a (seed, program) pair replays exactly. The
/// distributions below are written out rather than taken from <random> so
/// streams are identical across standard library implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept : key_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Standard normal (Box-Muller, one value per call pair is cached).
  double normal() noexcept;

  std::uint64_t draws() const noexcept { return counter_; }

  template <typename T>
  void shuffle(std::vector<T>& values) noexcept {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& values) noexcept {
    return values[static_cast<std::size_t>(below(values.size()))];
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stable seed derivation: folds names and integers into a master seed.
class SeedHasher {
 public:
  explicit SeedHasher(std::uint64_t master) noexcept : state_(splitmix64(master)) {}
  SeedHasher& add(std::string_view text) noexcept;
  SeedHasher& add(std::uint64_t value) noexcept;
  std::uint64_t seed() const noexcept { return splitmix64(state_); }

 private:
  std::uint64_t state_;
};

}  // namespace oedg
