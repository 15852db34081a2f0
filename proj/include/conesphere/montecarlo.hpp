#pragma once

#include <cstdint>

#include "conesphere/geometry.hpp"
#include "conesphere/simd/membership.hpp"

namespace conesphere {

struct McSpec {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0x5eed;
  bool stratified = false;  ///< equal allocation over the eight octants of the ball
  unsigned threads = 0;     ///< 0: hardware concurrency
};

struct McResult {
  double estimate = 0.0;
  double sigma = 0.0;  ///< 1-sigma binomial standard error
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// Samples are generated in fixed-size partitions, each from its own stream
/// seeded by (seed, partition index), and hit counts are summed as integers:
/// the result does not depend on the thread count.
inline constexpr std::uint64_t kMcPartitionSize = 1u << 16;

simd::MembershipParams membership_params(const CanonicalGeometry& geom);

/// Uniform samples inside the sphere, tested against the solid cone.
McResult mc_volume(const CanonicalGeometry& geom, const McSpec& spec = {});

/// Derived seed for item `index` of a batch.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace conesphere
