#include "rvol/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rvol/huber.hpp"

namespace rvol {

namespace {

VolSeries make_backward_series(const ReturnSeries& r, int m, std::string method,
                               double lambda, double z) {
  if (m < 1) throw std::invalid_argument("predictor: window m must be >= 1");
  if (r.size() <= m)
    throw std::invalid_argument("predictor: series too short for window m");
  VolSeries out;
  out.values.assign(r.size(), 0.0);
  out.valid.assign(r.size(), 0);
  out.meta.method = std::move(method);
  out.meta.lambda = lambda;
  out.meta.m = m;
  out.meta.z = z;
  out.meta.direction = Direction::Backward;
  return out;
}

// Backward weights index 0 corresponds to time t-1: window data is the
// squared returns X_{t-1}^2, X_{t-2}^2, ..., X_{t-m}^2 in that order.
std::vector<double> backward_window(const ReturnSeries& r, int t, int m) {
  std::vector<double> win(m);
  for (int k = 0; k < m; ++k) {
    const double x = r.values[t - 1 - k];
    win[k] = x * x;
  }
  return win;
}

}  // namespace

VolSeries ewma_predictor(const ReturnSeries& returns, double lambda, int m) {
  VolSeries out = make_backward_series(returns, m, "ewma", lambda, 0.0);
  const DecayWeights w = make_weights(lambda, m - 1, Direction::Backward);
  for (int t = m; t < returns.size(); ++t) {
    const std::vector<double> win = backward_window(returns, t, m);
    double v = 0.0;
    for (int k = 0; k < m; ++k) v += w.weights[k] * win[k];
    out.values[t] = v;
    out.valid[t] = 1;
  }
  return out;
}

VolSeries clipped_ewma_predictor(const ReturnSeries& returns, double lambda,
                                 int m, double clip) {
  if (!(clip > 0.0))
    throw std::invalid_argument("clipped_ewma_predictor: clip must be > 0");
  VolSeries out = ewma_predictor(returns, lambda, m);
  out.meta.method = "clipewma";
  for (int t = 0; t < out.size(); ++t)
    if (out.valid[t]) out.values[t] = std::min(out.values[t], clip);
  return out;
}

VolSeries huber_predictor(const ReturnSeries& returns, double lambda, int m,
                          double z) {
  if (!(z > 0.0)) throw std::invalid_argument("huber_predictor: z must be > 0");
  VolSeries out = make_backward_series(returns, m, "huber", lambda, z);
  const DecayWeights w = make_weights(lambda, m - 1, Direction::Backward);
  for (int t = m; t < returns.size(); ++t) {
    const std::vector<double> win = backward_window(returns, t, m);
    const HuberFit fit = tuning_free_fit(win, w, z);
    out.values[t] = fit.theta;
    out.valid[t] = 1;
  }
  return out;
}

}  // namespace rvol
