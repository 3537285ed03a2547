#include "rvol/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace rvol {

DecayWeights make_weights(double lambda, int m, Direction direction) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::domain_error("make_weights: lambda must be in (0, 1]");
  if (m < 0) throw std::domain_error("make_weights: m must be >= 0");

  DecayWeights out;
  out.lambda = lambda;
  out.m = m;
  out.direction = direction;
  out.weights.resize(m + 1);

  double sum = 0.0;
  double p = 1.0;
  for (int k = 0; k <= m; ++k) {
    out.weights[k] = p;
    sum += p;
    p *= lambda;
  }
  double sumsq = 0.0;
  for (auto& w : out.weights) {
    w /= sum;
    sumsq += w * w;
  }
  out.n_eff = 1.0 / sumsq;
  return out;
}

double n_eff_closed_form(double lambda, int m) {
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::domain_error(
        "n_eff_closed_form: lambda must be in (0, 1); use m+1 at lambda = 1");
  if (m < 0) throw std::domain_error("n_eff_closed_form: m must be >= 0");
  const double lm1 = std::pow(lambda, m + 1);
  return (1.0 + lambda) * (1.0 - lm1) / ((1.0 - lambda) * (1.0 + lm1));
}

double half_life_to_lambda(double l) {
  if (!(l > 0.0)) throw std::domain_error("half_life_to_lambda: l must be > 0");
  return std::exp2(-1.0 / l);
}

double lambda_to_half_life(double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::domain_error("lambda_to_half_life: lambda must be in (0, 1)");
  return std::log(0.5) / std::log(lambda);
}

int half_life_to_window(double l) {
  if (!(l > 0.0)) throw std::domain_error("half_life_to_window: l must be > 0");
  return static_cast<int>(std::lround(2.0 * l));
}

SmoothnessDiag smoothness_diag(const std::vector<double>& vol_path,
                               const DecayWeights& w, int t) {
  const int n = static_cast<int>(vol_path.size());
  if (w.direction == Direction::Forward) {
    if (t < 0 || t + w.m >= n)
      throw std::out_of_range("smoothness_diag: forward window out of bounds");
  } else {
    if (t - 1 - w.m < 0 || t >= n)
      throw std::out_of_range("smoothness_diag: backward window out of bounds");
  }
  const double anchor = vol_path[t];
  SmoothnessDiag d;
  for (int k = 0; k <= w.m; ++k) {
    const int s = (w.direction == Direction::Forward) ? t + k : t - 1 - k;
    const double diff = vol_path[s] - anchor;
    d.delta0 += w.weights[k] * vol_path[s];
    d.delta1 += w.weights[k] * w.weights[k] * diff * diff;
  }
  d.delta0 -= anchor;
  return d;
}

}  // namespace rvol
