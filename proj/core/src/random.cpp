#include "oedg/random.hpp"

#include <cmath>
#include <numbers>

namespace oedg {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::result_type Rng::operator()() noexcept {
  const std::uint64_t value = splitmix64(key_ + counter_ * kGolden);
  ++counter_;
  return value;
}

double Rng::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
  // Rejection on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t value;
  do {
    value = (*this)();
  } while (value >= limit);
  return value % bound;
}

double Rng::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

SeedHasher& SeedHasher::add(std::string_view text) noexcept {
  // FNV-1a over the bytes, then folded into the running state.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  state_ = splitmix64(state_ ^ h);
  return *this;
}

SeedHasher& SeedHasher::add(std::uint64_t value) noexcept {
  state_ = splitmix64(state_ ^ splitmix64(value));
  return *this;
}

}  // namespace oedg
