#include "conesphere/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "conesphere/errors.hpp"
#include "conesphere/onaxis.hpp"

namespace conesphere {

namespace {

using OctantHits = std::array<std::uint64_t, 8>;

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Hits per octant for partition `part`; sample i of the run sits in octant i % 8.
OctantHits run_partition(std::uint64_t part, std::uint64_t count, const McSpec& spec, const simd::MembershipParams& mp) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(part), static_cast<std::uint32_t>(part >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<double> ux(count), uy(count), uz(count);
  const std::uint64_t first = part * kMcPartitionSize;
  for (std::uint64_t i = 0; i < count; ++i) {
    double x, y, z;
    if (spec.stratified) {
      do {
        x = unit_double(rng);
        y = unit_double(rng);
        z = unit_double(rng);
      } while (x * x + y * y + z * z > 1.0);
      const unsigned oct = static_cast<unsigned>((first + i) % 8);
      if (oct & 1U) x = -x;
      if (oct & 2U) y = -y;
      if (oct & 4U) z = -z;
    } else {
      do {
        x = 2.0 * unit_double(rng) - 1.0;
        y = 2.0 * unit_double(rng) - 1.0;
        z = 2.0 * unit_double(rng) - 1.0;
      } while (x * x + y * y + z * z > 1.0);
    }
    ux[i] = x;
    uy[i] = y;
    uz[i] = z;
  }
  OctantHits hits{};
  if (!spec.stratified) {
    hits[0] = simd::count_hits(ux.data(), uy.data(), uz.data(), count, mp);
    return hits;
  }
  // Regroup by octant so the kernel sees contiguous runs.
  for (unsigned oct = 0; oct < 8; ++oct) {
    std::vector<double> ox, oy, oz;
    for (std::uint64_t i = (8 + oct - first % 8) % 8; i < count; i += 8) {
      ox.push_back(ux[i]);
      oy.push_back(uy[i]);
      oz.push_back(uz[i]);
    }
    hits[oct] = simd::count_hits(ox.data(), oy.data(), oz.data(), ox.size(), mp);
  }
  return hits;
}

}  // namespace

simd::MembershipParams membership_params(const CanonicalGeometry& g) {
  simd::MembershipParams p;
  p.R = g.R;
  p.offset_x = -g.b;
  p.offset_z = -g.d;
  if (std::abs(g.phi - kHalfPi) < kHalfSpaceTolerance) {
    p.mode = simd::MembershipMode::HalfSpace;
  } else if (g.phi < kHalfPi) {
    const double t = std::tan(g.phi);
    p.tan2 = t * t;
  } else {
    const double t = std::tan(kPi - g.phi);
    p.tan2 = t * t;
    p.mode = simd::MembershipMode::Complement;
  }
  return p;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x9e3779b9u};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

McResult mc_volume(const CanonicalGeometry& g, const McSpec& spec) {
  validate(g);
  if (spec.samples < 1) throw InvalidInput("Monte Carlo needs at least one sample");
  const simd::MembershipParams mp = membership_params(g);
  const std::uint64_t parts = (spec.samples + kMcPartitionSize - 1) / kMcPartitionSize;
  std::vector<OctantHits> per_part(parts);

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, parts));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t p; (p = next.fetch_add(1)) < parts;) {
      const std::uint64_t count = std::min(kMcPartitionSize, spec.samples - p * kMcPartitionSize);
      per_part[p] = run_partition(p, count, spec, mp);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  OctantHits hits{};
  for (const auto& h : per_part)
    for (std::size_t o = 0; o < 8; ++o) hits[o] += h[o];

  McResult r;
  r.samples = spec.samples;
  const double vs = sphere_volume(g.R);
  const double n = static_cast<double>(spec.samples);
  for (auto h : hits) r.hits += h;
  r.estimate = vs * static_cast<double>(r.hits) / n;
  if (!spec.stratified) {
    const double p = static_cast<double>(r.hits) / n;
    r.sigma = vs * std::sqrt(p * (1.0 - p) / n);
    return r;
  }
  double var = 0.0;
  for (std::size_t o = 0; o < 8; ++o) {
    const std::uint64_t n_o = spec.samples / 8 + (o < spec.samples % 8 ? 1 : 0);
    if (n_o == 0) continue;
    const double p = static_cast<double>(hits[o]) / static_cast<double>(n_o);
    const double w = static_cast<double>(n_o) / n;
    var += w * w * p * (1.0 - p) / static_cast<double>(n_o);
  }
  r.sigma = vs * std::sqrt(var);
  return r;
}

}  // namespace conesphere
