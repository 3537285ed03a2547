#pragma once

#include <cstdint>
#include <random>

namespace rvol {

/// Deterministic random stream: mt19937_64 seeded through splitmix64 from
/// (seed, stream).  Variates are generated by explicit transforms (not the
/// standard-library distributions) so outputs are identical across
/// platforms for a given build.  Replication r of a study uses stream r.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();  // open interval (0, 1)
  double normal();   // Box-Muller
  double gamma(double shape);  // Marsaglia-Tsang, shape >= 1
  double chi_square(double df);
  double student_t(double df);
  double lognormal();  // exp(standard normal)

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rvol
