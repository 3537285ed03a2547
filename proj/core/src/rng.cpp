#include "rvol/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rvol {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ (0xda3e39cb94b95bdbULL * (stream + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(x)),
                    static_cast<std::uint32_t>(splitmix64(x)),
                    static_cast<std::uint32_t>(splitmix64(x)),
                    static_cast<std::uint32_t>(splitmix64(x)),
                    static_cast<std::uint32_t>(splitmix64(x)),
                    static_cast<std::uint32_t>(splitmix64(x))};
  gen_.seed(seq);
}

double Rng::uniform() {
  // 53-bit mantissa, shifted into (0, 1)
  const std::uint64_t bits = gen_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double Rng::gamma(double shape) {
  if (!(shape >= 1.0))
    throw std::domain_error("Rng::gamma: shape must be >= 1");
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::chi_square(double df) {
  if (!(df >= 2.0))
    throw std::domain_error("Rng::chi_square: df must be >= 2");
  return 2.0 * gamma(0.5 * df);
}

double Rng::student_t(double df) {
  if (!(df > 2.0))
    throw std::domain_error("Rng::student_t: df must be > 2");
  return normal() / std::sqrt(chi_square(df) / df);
}

double Rng::lognormal() { return std::exp(normal()); }

}  // namespace rvol
