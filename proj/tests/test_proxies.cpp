#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rvol/huber.hpp"
#include "rvol/proxies.hpp"
#include "rvol/rng.hpp"

using namespace rvol;

namespace {

ReturnSeries constant_series(int n, double x) {
  ReturnSeries r;
  r.values.assign(n, x);
  return r;
}

ReturnSeries gaussian_series(int n, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  ReturnSeries r;
  r.values.resize(n);
  for (auto& x : r.values) x = sigma * rng.normal();
  return r;
}

}  // namespace

TEST_CASE("ewma proxy") {
  SUBCASE("constant returns") {
    const VolSeries p = ewma_proxy(constant_series(30, 0.02), 0.9, 5);
    for (int t = 0; t < p.size(); ++t) {
      if (t + 5 < 30) {
        CHECK(p.valid[t]);
        CHECK(p.values[t] == doctest::Approx(4e-4).epsilon(1e-12));
      } else {
        CHECK_FALSE(p.valid[t]);
      }
    }
  }
  SUBCASE("uniform average of squares") {
    ReturnSeries r;
    r.values = {1.0, 3.0};
    const VolSeries p = ewma_proxy(r, 1.0, 1);
    CHECK(p.values[0] == doctest::Approx(5.0));
    CHECK_FALSE(p.valid[1]);
  }
  SUBCASE("matches direct summation at random t") {
    const ReturnSeries r = gaussian_series(120, 0.01, 4);
    const int m = 9;
    const double lambda = 0.88;
    const VolSeries p = ewma_proxy(r, lambda, m);
    const DecayWeights w = make_weights(lambda, m, Direction::Forward);
    Rng pick(99);
    for (int rep = 0; rep < 10; ++rep) {
      const int t = static_cast<int>(pick.uniform() * (120 - m - 1));
      double ref = 0.0;
      for (int k = 0; k <= m; ++k)
        ref += w.weights[k] * r.values[t + k] * r.values[t + k];
      CHECK(p.values[t] == doctest::Approx(ref).epsilon(1e-13));
    }
  }
  SUBCASE("series too short") {
    CHECK_THROWS_AS(ewma_proxy(constant_series(5, 0.01), 0.9, 5),
                    std::invalid_argument);
  }
}

TEST_CASE("clipped single proxy") {
  SUBCASE("closed-form threshold for equal magnitudes") {
    const int n = 8;
    const double d = 0.03, z = 2.0, T = 100.0;
    const VolSeries p = clipped_single_proxy(constant_series(40, d),
                                             1.0, n - 1, z, T);
    // equal |X| = d: tau = d^2/sqrt(n z), c = d^2 sqrt(T/z)
    const double c = d * d * std::sqrt(T / z);
    CHECK(p.values[0] == doctest::Approx(std::min(d * d, c)).epsilon(1e-9));
  }
  SUBCASE("clip inactive vs active") {
    ReturnSeries r = gaussian_series(80, 0.01, 8);
    r.values[10] = 0.5;  // extreme squared return at t = 10
    const VolSeries p = clipped_single_proxy(r, 0.9, 13, 2.0, 50.0);
    // a typical squared return stays untouched
    CHECK(p.values[3] == doctest::Approx(r.values[3] * r.values[3]));
    // the extreme one is clipped strictly below its raw square
    CHECK(p.values[10] < 0.25);
  }
}

TEST_CASE("clipped ewma proxy") {
  SUBCASE("no clipping equals the vanilla proxy") {
    const ReturnSeries r = gaussian_series(60, 0.01, 12);
    const VolSeries vanilla = ewma_proxy(r, 0.9, 9);
    const VolSeries clipped = clipped_ewma_proxy(r, 0.9, 9, 2.0, 1e12);
    for (int t = 0; t < 50; ++t)
      CHECK(clipped.values[t] == doctest::Approx(vanilla.values[t]).epsilon(1e-10));
  }
  SUBCASE("all terms clipped") {
    // one window of identical large values with tiny T forces every
    // summand to the cap
    const int m = 4;
    const double d = 1.0, z = 2.0, T = 1.0;
    const VolSeries p = clipped_ewma_proxy(constant_series(20, d), 1.0, m, z, T);
    const DecayWeights w = make_weights(1.0, m, Direction::Forward);
    const int n = m + 1;
    const double tau = d * d / n / std::sqrt(n * z / n / n);  // d^2/sqrt(nz)... n_eff=n
    const double cap = (d * d / std::sqrt(n * z)) * std::sqrt(T / w.n_eff);
    if (cap < d * d / n) {
      CHECK(p.values[0] == doctest::Approx(n * cap).epsilon(1e-9));
    }
    (void)tau;
  }
  SUBCASE("mixed case matches direct summation") {
    ReturnSeries r = gaussian_series(50, 0.01, 21);
    r.values[5] = 0.3;
    const double lambda = 0.85, z = 2.5, T = 30.0;
    const int m = 7;
    const VolSeries p = clipped_ewma_proxy(r, lambda, m, z, T);
    const DecayWeights w = make_weights(lambda, m, Direction::Forward);
    for (int t : {0, 3, 5}) {
      std::vector<double> sq(m + 1);
      for (int k = 0; k <= m; ++k) sq[k] = r.values[t + k] * r.values[t + k];
      const TauResult tr = solve_tau(sq, w, 0.0, z);
      REQUIRE_FALSE(tr.fallback);
      const double cap = tr.tau * std::sqrt(T / w.n_eff);
      double ref = 0.0;
      for (int k = 0; k <= m; ++k) ref += std::min(w.weights[k] * sq[k], cap);
      CHECK(p.values[t] == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("huber proxy") {
  SUBCASE("constant squared returns") {
    const VolSeries p = huber_proxy(constant_series(30, 0.02), 0.9, 5, 2.0, 20.0);
    for (int t = 0; t + 5 < 30; ++t)
      CHECK(p.values[t] == doctest::Approx(4e-4).epsilon(1e-10));
  }

  SUBCASE("T -> infinity recovers the vanilla EWMA proxy") {
    ReturnSeries r = gaussian_series(40, 0.01, 31);
    r.values[7] = 0.2;
    const VolSeries vanilla = ewma_proxy(r, 0.9, 13);
    const VolSeries hp = huber_proxy(r, 0.9, 13, 2.0, 1e9);
    for (int t = 0; t + 13 < 40; ++t)
      CHECK(std::abs(hp.values[t] - vanilla.values[t]) < 1e-8);
  }

  SUBCASE("extreme outlier is damped below the vanilla proxy") {
    ReturnSeries r = gaussian_series(40, 0.01, 77);
    r.values[5] = 0.1;  // squared return ~100x the window median
    const VolSeries vanilla = ewma_proxy(r, 0.9, 13);
    const VolSeries hp = huber_proxy(r, 0.9, 13, 2.0, 30.0);
    CHECK(hp.values[2] < vanilla.values[2]);
  }

  SUBCASE("clipped ewma is never above the vanilla proxy") {
    const ReturnSeries r = gaussian_series(100, 0.02, 41);
    const VolSeries vanilla = ewma_proxy(r, 0.9, 9);
    const VolSeries clipped = clipped_ewma_proxy(r, 0.9, 9, 2.0, 50.0);
    for (int t = 0; t + 9 < 100; ++t)
      CHECK(clipped.values[t] <= vanilla.values[t] + 1e-14);
  }

  SUBCASE("T-adaptivity: clipped ewma increases toward vanilla with T") {
    ReturnSeries r = gaussian_series(40, 0.01, 55);
    r.values[4] = 0.15;
    const VolSeries vanilla = ewma_proxy(r, 0.9, 13);
    double prev = 0.0;
    for (double T : {2.0, 20.0, 200.0, 2e4, 1e9}) {
      const VolSeries p = clipped_ewma_proxy(r, 0.9, 13, 2.0, T);
      CHECK(p.values[1] >= prev - 1e-14);
      CHECK(p.values[1] <= vanilla.values[1] + 1e-14);
      prev = p.values[1];
    }
    CHECK(std::abs(prev - vanilla.values[1]) < 1e-8);
  }

  SUBCASE("exact scale equivariance") {
    const ReturnSeries r = gaussian_series(60, 0.01, 61);
    const double a = 3.7;
    ReturnSeries scaled = r;
    for (auto& x : scaled.values) x *= a;
    const VolSeries base = huber_proxy(r, 0.9, 9, 2.0, 40.0);
    const VolSeries big = huber_proxy(scaled, 0.9, 9, 2.0, 40.0);
    for (int t = 0; t + 9 < 60; ++t)
      CHECK(big.values[t] == doctest::Approx(a * a * base.values[t]).epsilon(1e-9));
  }

  SUBCASE("time-average near truth for Gaussian returns") {
    const double sigma2 = 4e-4;
    const ReturnSeries r = gaussian_series(2050, 0.02, 71);
    const int m = 13;
    double se = sigma2 * std::sqrt(2.0 / 2000);  // rough MC standard error
    for (auto make : {+[](const ReturnSeries& rr) {
                        return ewma_proxy(rr, 0.9, 13);
                      },
                      +[](const ReturnSeries& rr) {
                        return clipped_ewma_proxy(rr, 0.9, 13, 3.8, 2000.0);
                      },
                      +[](const ReturnSeries& rr) {
                        return huber_proxy(rr, 0.9, 13, 3.8, 2000.0);
                      }}) {
      const VolSeries p = make(r);
      double mean = 0.0;
      int count = 0;
      for (int t = 0; t + m < r.size(); ++t) {
        mean += p.values[t];
        ++count;
      }
      mean /= count;
      // windows overlap, so allow a wider band than iid standard errors
      CHECK(std::abs(mean - sigma2) < 10 * se);
    }
  }
}
