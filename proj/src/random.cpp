#include "cregf/random.hpp"

namespace cregf {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t cell, std::uint64_t rep) noexcept {
  std::uint64_t state = master_seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ cell;
  h = splitmix64(state);
  state = h ^ rep;
  return splitmix64(state);
}

double open_unit(Rng& rng) noexcept {
  // 52 bits: (2^52 - 1 + 0.5) * 2^-52 is still exactly representable below 1.
  constexpr double kInv52 = 1.0 / 4503599627370496.0;
  return (static_cast<double>(rng() >> 12) + 0.5) * kInv52;
}

}  // namespace cregf
