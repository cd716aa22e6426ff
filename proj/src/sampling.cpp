#include "ckl/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ckl {

namespace {

constexpr std::uint64_t kSeedStride = 2654435761u;

std::uint64_t offset(std::uint64_t i, std::uint64_t seed) { return seed * kSeedStride + i + 1; }

}  // namespace

double halton(std::uint64_t index, std::uint32_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

DomainPoint sample_sphere(int d, std::uint64_t i, std::uint64_t seed) {
  const std::uint64_t k = offset(i, seed);
  const double u = halton(k, 2), v = halton(k, 3);
  if (d == 1) {
    const double theta = 2.0 * std::numbers::pi * u;
    return DomainPoint::sphere({std::cos(theta), std::sin(theta)});
  }
  if (d == 2) {
    const double z = 2.0 * u - 1.0;
    const double r = std::sqrt(std::max(1.0 - z * z, 0.0));
    const double theta = 2.0 * std::numbers::pi * v;
    return DomainPoint::sphere({r * std::cos(theta), r * std::sin(theta), z});
  }
  throw std::invalid_argument("sample_sphere: only d = 1, 2 supported");
}

DomainPoint sample_ball(int d, std::uint64_t i, std::uint64_t seed) {
  const std::uint64_t k = offset(i, seed);
  const double u = halton(k, 2), v = halton(k, 3);
  if (d == 1) return DomainPoint::ball({2.0 * u - 1.0});
  if (d == 2) {
    const double r = std::sqrt(u);
    const double theta = 2.0 * std::numbers::pi * v;
    return DomainPoint::ball({r * std::cos(theta), r * std::sin(theta)});
  }
  throw std::invalid_argument("sample_ball: only d = 1, 2 supported");
}

DomainPoint sample_simplex(int d, std::uint64_t i, std::uint64_t seed) {
  const std::uint64_t k = offset(i, seed);
  const double u = halton(k, 2), v = halton(k, 3);
  if (d == 1) return DomainPoint::simplex({u});
  if (d == 2) {
    const double s = std::sqrt(u);
    return DomainPoint::simplex({1.0 - s, v * s});
  }
  throw std::invalid_argument("sample_simplex: only d = 1, 2 supported");
}

DomainPoint sample_domain(Domain domain, int d, std::uint64_t i, std::uint64_t seed) {
  switch (domain) {
    case Domain::Sphere: return sample_sphere(d, i, seed);
    case Domain::Ball: return sample_ball(d, i, seed);
    case Domain::Simplex: return sample_simplex(d, i, seed);
  }
  throw std::logic_error("sample_domain: unreachable");
}

double sample_uniform(double lo, double hi, std::uint64_t i, std::uint64_t seed,
                      std::uint32_t base) {
  return lo + (hi - lo) * halton(offset(i, seed), base);
}

}  // namespace ckl
