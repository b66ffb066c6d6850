#pragma once

#include <cstdint>
#include <random>

namespace cregf {

using Rng = std::mt19937_64;

/// SplitMix64 output function (Steele, Lea & Flood); advances `state`.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed for replication `rep` of table cell `cell`. Depends only on its three
/// arguments, so results never depend on scheduling or worker count.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t cell, std::uint64_t rep) noexcept;

/// Uniform draw on the open interval (0, 1) from the top 52 bits of one
/// generator output. Bit-identical across platforms, unlike
/// std::uniform_real_distribution.
double open_unit(Rng& rng) noexcept;

}  // namespace cregf
