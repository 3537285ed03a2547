#include "rvol/proxies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rvol/huber.hpp"

namespace rvol {

namespace {

std::vector<double> squared(const ReturnSeries& r) {
  std::vector<double> sq(r.values.size());
  for (size_t i = 0; i < sq.size(); ++i) sq[i] = r.values[i] * r.values[i];
  return sq;
}

VolSeries make_forward_series(const ReturnSeries& r, int m, std::string method,
                              double lambda, double z, double T) {
  if (r.size() <= m)
    throw std::invalid_argument("proxy: series too short for window m");
  VolSeries out;
  out.values.assign(r.size(), 0.0);
  out.valid.assign(r.size(), 0);
  out.meta.method = std::move(method);
  out.meta.lambda = lambda;
  out.meta.m = m;
  out.meta.z = z;
  out.meta.T_used = T;
  out.meta.direction = Direction::Forward;
  return out;
}

}  // namespace

VolSeries ewma_proxy(const ReturnSeries& returns, double lambda, int m) {
  VolSeries out = make_forward_series(returns, m, "ewma", lambda, 0.0, 0.0);
  const DecayWeights w = make_weights(lambda, m, Direction::Forward);
  const std::vector<double> sq = squared(returns);
  for (int t = 0; t + m < returns.size(); ++t) {
    double v = 0.0;
    for (int k = 0; k <= m; ++k) v += w.weights[k] * sq[t + k];
    out.values[t] = v;
    out.valid[t] = 1;
  }
  return out;
}

VolSeries clipped_single_proxy(const ReturnSeries& returns, double lambda,
                               int m, double z, double T) {
  if (T < 1.0) throw std::invalid_argument("clipped_single_proxy: T must be >= 1");
  VolSeries out = make_forward_series(returns, m, "clip1", lambda, z, T);
  const DecayWeights w = make_weights(lambda, m, Direction::Forward);
  const std::vector<double> sq = squared(returns);
  for (int t = 0; t + m < returns.size(); ++t) {
    std::span<const double> win(sq.data() + t, m + 1);
    const TauResult tr = solve_tau(win, w, 0.0, z);
    const double cap = tr.fallback
                           ? std::numeric_limits<double>::infinity()
                           : tr.tau * std::sqrt(w.n_eff * T);
    out.values[t] = std::min(sq[t], cap);
    out.valid[t] = 1;
  }
  return out;
}

VolSeries clipped_ewma_proxy(const ReturnSeries& returns, double lambda, int m,
                             double z, double T) {
  if (T < 1.0) throw std::invalid_argument("clipped_ewma_proxy: T must be >= 1");
  VolSeries out = make_forward_series(returns, m, "clipewma", lambda, z, T);
  const DecayWeights w = make_weights(lambda, m, Direction::Forward);
  const std::vector<double> sq = squared(returns);
  for (int t = 0; t + m < returns.size(); ++t) {
    std::span<const double> win(sq.data() + t, m + 1);
    const TauResult tr = solve_tau(win, w, 0.0, z);
    const double cap = tr.fallback
                           ? std::numeric_limits<double>::infinity()
                           : tr.tau * std::sqrt(T / w.n_eff);
    double v = 0.0;
    for (int k = 0; k <= m; ++k) v += std::min(w.weights[k] * sq[t + k], cap);
    out.values[t] = v;
    out.valid[t] = 1;
  }
  return out;
}

VolSeries huber_proxy(const ReturnSeries& returns, double lambda, int m,
                      double z, double T) {
  if (T < 1.0) throw std::invalid_argument("huber_proxy: T must be >= 1");
  VolSeries out = make_forward_series(returns, m, "huber", lambda, z, T);
  const DecayWeights w = make_weights(lambda, m, Direction::Forward);
  const std::vector<double> sq = squared(returns);
  for (int t = 0; t + m < returns.size(); ++t) {
    std::span<const double> win(sq.data() + t, m + 1);
    const HuberFit fit = tuning_free_fit(win, w, z);
    const double c_t = fit.tau * std::sqrt(T / w.n_eff);
    double v = c_t > 0.0 ? solve_location(win, w, c_t) : fit.theta;
    if (v < 0.0) {
      v = 0.0;
      ++out.meta.floored_count;
    }
    out.values[t] = v;
    out.valid[t] = 1;
  }
  return out;
}

}  // namespace rvol
