#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rvol/losses.hpp"
#include "rvol/rng.hpp"

using namespace rvol;

namespace {

VolSeries make_vol(std::vector<double> v) {
  VolSeries s;
  s.valid.assign(v.size(), 1);
  s.values = std::move(v);
  return s;
}

VolSeries random_vol(int n, std::uint64_t seed, double lo = 0.5,
                     double hi = 2.0) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = lo + (hi - lo) * rng.uniform();
  return make_vol(std::move(v));
}

}  // namespace

TEST_CASE("pointwise losses") {
  CHECK(mse(2.0, 2.0) == 0.0);
  CHECK(mse(3.0, 1.0) == doctest::Approx(4.0));
  CHECK(ql(2.0, 2.0) == doctest::Approx(0.0));
  // QL(sigma2=2e, h=2) = e - 1 - 1 = e - 2
  CHECK(ql(2.0 * std::exp(1.0), 2.0) == doctest::Approx(std::exp(1.0) - 2.0));
  CHECK(ql(1.0, 4.0) == doctest::Approx(0.25 - std::log(0.25) - 1.0));
  CHECK_THROWS_AS(ql(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(ql(1.0, 0.0), std::domain_error);
}

TEST_CASE("loss decomposition f(h) + B(sigma2) + C(h) sigma2") {
  const RobustLossSpec specs[] = {mse_loss(), ql_loss()};
  Rng rng(7);
  for (const auto& spec : specs) {
    // B is recovered from the residual; check it depends only on sigma2
    auto B = [&](double s2, double h) {
      return spec.eval(s2, h) - spec.f(h) - spec.C(h) * s2;
    };
    for (int i = 0; i < 50; ++i) {
      const double s2 = 0.1 + 3.0 * rng.uniform();
      const double h1 = 0.1 + 3.0 * rng.uniform();
      const double h2 = 0.1 + 3.0 * rng.uniform();
      CHECK(B(s2, h1) == doctest::Approx(B(s2, h2)).epsilon(1e-10));
    }
    // C monotone decreasing
    double prev = spec.C(0.1);
    for (double h : {0.5, 1.0, 2.0, 5.0}) {
      CHECK(spec.C(h) < prev);
      prev = spec.C(h);
    }
  }
  // explicit forms
  CHECK(mse_loss().C(3.0) == doctest::Approx(-6.0));
  CHECK(mse_loss().f(3.0) == doctest::Approx(9.0));
  CHECK(ql_loss().C(4.0) == doctest::Approx(0.25));
  CHECK(ql_loss().f(4.0) == doctest::Approx(std::log(4.0)));
}

TEST_CASE("joint valid indices") {
  VolSeries proxy = make_vol({1, 2, 3, 4, 5});
  proxy.valid = {1, 1, 0, 1, 1};
  VolSeries pred = make_vol({1, 1, 1, 1, 1});
  pred.valid = {0, 1, 1, 1, 0};
  const auto idx = joint_valid_indices(proxy, {&pred});
  CHECK(idx == std::vector<int>{1, 3});
}

TEST_CASE("optimal scale closed forms") {
  SUBCASE("MSE: beta = sum(h sigma2) / sum(h^2)") {
    const VolSeries proxy = make_vol({2.0, 4.0, 6.0});
    const VolSeries pred = make_vol({1.0, 2.0, 3.0});
    // proxy = 2 * pred exactly
    CHECK(optimal_scale(mse_loss(), proxy, pred) == doctest::Approx(2.0));
  }
  SUBCASE("QL: beta = mean(sigma2 / h)") {
    const VolSeries proxy = make_vol({3.0, 8.0});
    const VolSeries pred = make_vol({1.0, 2.0});
    CHECK(optimal_scale(ql_loss(), proxy, pred) == doctest::Approx(3.5));
  }
  SUBCASE("scaled loss never exceeds raw loss") {
    for (std::uint64_t seed : {11u, 22u, 33u}) {
      const VolSeries proxy = random_vol(200, seed);
      const VolSeries pred = random_vol(200, seed + 1000);
      for (const auto& spec : {mse_loss(), ql_loss()}) {
        const double beta = optimal_scale(spec, proxy, pred);
        const double raw = aggregate_loss(spec, proxy, pred);
        const double scaled = aggregate_loss(spec, proxy, pred, beta);
        CHECK(scaled <= raw + 1e-12);
        // first-order optimality: nearby scales are no better
        for (double eps : {-1e-3, 1e-3}) {
          CHECK(scaled <=
                aggregate_loss(spec, proxy, pred, beta * (1 + eps)) + 1e-12);
        }
      }
    }
  }
  SUBCASE("closed form agrees with golden-section minimization") {
    const VolSeries proxy = random_vol(500, 77);
    const VolSeries pred = random_vol(500, 78);
    for (auto spec : {mse_loss(), ql_loss()}) {
      const double closed = optimal_scale(spec, proxy, pred);
      spec.has_closed_form_scale = false;  // force the numeric path
      const double numeric = optimal_scale(spec, proxy, pred);
      CHECK(std::abs(closed - numeric) < 1e-6 * std::abs(closed));
    }
  }
}

TEST_CASE("aggregate loss") {
  const VolSeries proxy = make_vol({1.0, 2.0, 3.0});
  const VolSeries pred = make_vol({1.0, 1.0, 1.0});
  CHECK(aggregate_loss(mse_loss(), proxy, pred) ==
        doctest::Approx((0.0 + 1.0 + 4.0) / 3));
  VolSeries holed = proxy;
  holed.valid = {1, 0, 1};
  CHECK(aggregate_loss(mse_loss(), holed, pred) == doctest::Approx(2.0));
}

TEST_CASE("rolling loss difference") {
  const VolSeries proxy = make_vol({1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
  const VolSeries a = make_vol({2.0, 2.0, 2.0, 2.0, 2.0, 2.0});  // MSE 1 each
  const VolSeries b = make_vol({1.0, 1.0, 3.0, 1.0, 1.0, 1.0});  // 0 except 4
  const auto diff = rolling_loss_difference(mse_loss(), proxy, a, b, 2);
  // pointwise diff: 1,1,-3,1,1,1 -> trailing means of width 2
  REQUIRE(diff.size() == 5);
  CHECK(diff[0] == doctest::Approx(1.0));
  CHECK(diff[1] == doctest::Approx(-1.0));
  CHECK(diff[2] == doctest::Approx(-1.0));
  CHECK(diff[3] == doctest::Approx(1.0));
  CHECK(diff[4] == doctest::Approx(1.0));
}

TEST_CASE("false comparison rate") {
  SUBCASE("constant ordering is never false") {
    std::vector<double> la(50, 2.0), lb(50, 1.0);
    CHECK(false_comparison_rate(la, lb, 10, +1) == doctest::Approx(0.0));
    CHECK(false_comparison_rate(la, lb, 10, -1) == doctest::Approx(1.0));
  }
  SUBCASE("hand-counted mixture") {
    // diffs: +1 +1 -5 +1 +1; window 2 means: 1, -2, -2, 1 -> 2 of 4 false
    std::vector<double> la = {2, 2, 0, 2, 2};
    std::vector<double> lb = {1, 1, 5, 1, 1};
    CHECK(false_comparison_rate(la, lb, 2, +1) == doctest::Approx(0.5));
  }
  SUBCASE("larger windows reduce the false rate under noise") {
    Rng rng(5);
    const int n = 4000;
    std::vector<double> la(n), lb(n);
    for (int i = 0; i < n; ++i) {
      const double noise = rng.normal();
      la[i] = 5.0 + noise + 0.3;  // truly worse by 0.3 on average
      lb[i] = 5.0 + rng.normal();
    }
    const double r5 = false_comparison_rate(la, lb, 5, +1);
    const double r200 = false_comparison_rate(la, lb, 200, +1);
    CHECK(r200 <= r5);
    CHECK(r200 < 0.05);
  }
}

TEST_CASE("evaluate builds a full report") {
  const VolSeries proxy = random_vol(300, 1);
  const VolSeries p1 = random_vol(300, 2);
  VolSeries p2 = proxy;  // perfect predictor
  const auto rep = evaluate(ql_loss(), proxy, {p1, p2}, {"noise", "perfect"});
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.loss_name == "ql");
  CHECK(rep.T_effective == 300);
  CHECK(rep.rows[1].raw_loss == doctest::Approx(0.0));
  CHECK(rep.rows[1].beta == doctest::Approx(1.0));
  CHECK(rep.rows[1].scaled_loss <= rep.rows[0].scaled_loss);
  for (const auto& row : rep.rows)
    CHECK(row.scaled_loss <= row.raw_loss + 1e-12);
}

TEST_CASE("report serialization round-trips the numbers") {
  const VolSeries proxy = random_vol(50, 9);
  const VolSeries pred = random_vol(50, 10);
  const auto rep = evaluate(mse_loss(), proxy, {pred}, {"p"});
  const std::string csv = report_to_csv({rep});
  CHECK(csv.find("loss,proxy,predictor,") != std::string::npos);
  CHECK(csv.find("mse") != std::string::npos);
  const std::string js = report_to_json({rep});
  CHECK(js.find("\"predictors\"") != std::string::npos);
  CHECK(js.find("\"raw\"") != std::string::npos);
  CHECK(js.find("\"beta\"") != std::string::npos);
}
