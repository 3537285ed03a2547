#include "rvol/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "rvol/huber.hpp"

namespace rvol {

int PredictorConfig::effective_window() const {
  return window > 0 ? window : half_life_to_window(half_life);
}

double PredictorConfig::effective_z() const {
  if (z > 0.0) return z;
  const double lambda = half_life_to_lambda(half_life);
  const DecayWeights w =
      make_weights(lambda, effective_window() - 1, Direction::Backward);
  return std::log(w.n_eff);
}

int ProxyConfig::effective_m() const {
  return m > 0 ? m : half_life_to_window(half_life);
}

double ProxyConfig::effective_z() const {
  if (z > 0.0) return z;
  const double lambda = half_life_to_lambda(half_life);
  const DecayWeights w =
      make_weights(lambda, effective_m(), Direction::Forward);
  return 2.0 * std::log(w.n_eff);
}

VolSeries run_predictor(const ReturnSeries& returns,
                        const PredictorConfig& cfg) {
  const double lambda = half_life_to_lambda(cfg.half_life);
  const int m = cfg.effective_window();
  VolSeries out;
  switch (cfg.method) {
    case PredictorConfig::Method::Ewma:
      out = ewma_predictor(returns, lambda, m);
      break;
    case PredictorConfig::Method::ClippedEwma:
      out = clipped_ewma_predictor(returns, lambda, m, cfg.clip);
      break;
    case PredictorConfig::Method::Huber:
      out = huber_predictor(returns, lambda, m, cfg.effective_z());
      break;
  }
  if (!cfg.name.empty()) out.meta.method = cfg.name;
  return out;
}

VolSeries run_proxy(const ReturnSeries& returns, const ProxyConfig& cfg,
                    double T_full) {
  const double lambda = half_life_to_lambda(cfg.half_life);
  const int m = cfg.effective_m();
  const double T = cfg.T > 0.0 ? cfg.T : T_full;
  if (cfg.method != ProxyConfig::Method::Ewma && !(T >= 1.0))
    throw std::invalid_argument("run_proxy: evaluation horizon T must be >= 1");
  VolSeries out;
  switch (cfg.method) {
    case ProxyConfig::Method::Ewma:
      out = ewma_proxy(returns, lambda, m);
      break;
    case ProxyConfig::Method::ClipSingle:
      out = clipped_single_proxy(returns, lambda, m, cfg.effective_z(), T);
      break;
    case ProxyConfig::Method::ClipEwma:
      out = clipped_ewma_proxy(returns, lambda, m, cfg.effective_z(), T);
      break;
    case ProxyConfig::Method::Huber:
      out = huber_proxy(returns, lambda, m, cfg.effective_z(), T);
      break;
  }
  if (!cfg.name.empty()) out.meta.method = cfg.name;
  return out;
}

}  // namespace rvol
