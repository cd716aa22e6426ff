#pragma once

#include <cstdint>
#include <vector>

#include "ckl/kernels.hpp"

namespace ckl {

/// Radical-inverse (Halton) value of `index` in the given base; index 0 maps
/// to 0, so callers should start at 1.
double halton(std::uint64_t index, std::uint32_t base);

/// Deterministic low-discrepancy points on the domains. The seed offsets the
/// Halton index stream, so runs are reproducible given (seed, i).
DomainPoint sample_sphere(int d, std::uint64_t i, std::uint64_t seed);
DomainPoint sample_ball(int d, std::uint64_t i, std::uint64_t seed);
DomainPoint sample_simplex(int d, std::uint64_t i, std::uint64_t seed);
DomainPoint sample_domain(Domain domain, int d, std::uint64_t i, std::uint64_t seed);

/// Value in [lo, hi] from the base-`base` stream.
double sample_uniform(double lo, double hi, std::uint64_t i, std::uint64_t seed,
                      std::uint32_t base);

}  // namespace ckl
