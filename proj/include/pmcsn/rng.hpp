#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pmcsn {

/// Engine used for every random stream in the library.
using RngStream = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = 0xCBF29CE484222325ULL) noexcept {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Child seed for (master, index, label). Distinct labels give unrelated
/// streams for the same index, so callers can carve independent purposes
/// (sampling, evaluation, ...) out of one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                          std::string_view label) noexcept;

RngStream make_stream(std::uint64_t master, std::uint64_t index,
                      std::string_view label);

/// Maps the top 53 bits to [0, 1).
constexpr double bits_to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

template <class Rng>
double next_unit(Rng& rng) {
  return bits_to_unit(static_cast<std::uint64_t>(rng()));
}

/// Unbiased integer in [0, bound). Portable across standard libraries,
/// unlike std::uniform_int_distribution.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = static_cast<std::uint64_t>(rng());
  } while (r >= limit);
  return r % bound;
}

/// Counter-based coins for one live-arc world: the coin of an arc depends
/// only on (key, arc), never on the order arcs are inspected.
class WorldCoins {
 public:
  explicit constexpr WorldCoins(std::uint64_t key) noexcept : key_(key) {}

  constexpr double unit(std::uint64_t arc) const noexcept {
    return bits_to_unit(splitmix64(key_ ^ splitmix64(arc + 0x632BE59BD9B4E019ULL)));
  }
  constexpr bool live(std::uint64_t arc, double p) const noexcept {
    return unit(arc) < p;
  }
  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace pmcsn
