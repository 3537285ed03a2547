#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rvol/series.hpp"

namespace rvol {

// MSE(sigma2, h) = (sigma2 - h)^2
double mse(double sigma2, double h);

// QL(sigma2, h) = sigma2/h - log(sigma2/h) - 1; both arguments must be > 0.
double ql(double sigma2, double h);

/// A proxy-robust loss L(sigma2, h) = f(h) + B(sigma2) + C(h) sigma2,
/// with C monotone decreasing.
struct RobustLossSpec {
  std::string name;
  std::function<double(double, double)> eval;  // (sigma2, h)
  std::function<double(double)> C;
  std::function<double(double)> f;
  bool requires_positive = false;
  bool has_closed_form_scale = false;
};

RobustLossSpec mse_loss();
RobustLossSpec ql_loss();

struct PredictorEval {
  std::string name;
  double raw_loss = 0.0;
  double scaled_loss = 0.0;
  double beta = 1.0;
};

/// Aggregate loss comparison of predictor series under one proxy and loss.
struct EvalReport {
  std::string loss_name;
  std::string proxy_name;
  int T_effective = 0;
  std::vector<PredictorEval> rows;
};

// Indices where the proxy and every predictor are valid.
std::vector<int> joint_valid_indices(const VolSeries& proxy,
                                     const std::vector<const VolSeries*>& preds);

// argmin_beta mean_t L(proxy_t, beta * pred_t).  Closed forms for MSE and
// QL; golden-section minimization otherwise.
double optimal_scale(const RobustLossSpec& loss, const VolSeries& proxy,
                     const VolSeries& pred);

// Mean loss over jointly valid points, predictor scaled if given.
double aggregate_loss(const RobustLossSpec& loss, const VolSeries& proxy,
                      const VolSeries& pred,
                      std::optional<double> scale = std::nullopt);

// Trailing-window means of L(proxy, predA) - L(proxy, predB) over the
// jointly valid points; positive means predB was better in-window.
std::vector<double> rolling_loss_difference(const RobustLossSpec& loss,
                                            const VolSeries& proxy,
                                            const VolSeries& predA,
                                            const VolSeries& predB, int window);

// Fraction of rolling windows whose empirical ordering of the two
// per-point loss series contradicts truth_sign = sgn E[lossA - lossB].
double false_comparison_rate(const std::vector<double>& lossA_series,
                             const std::vector<double>& lossB_series,
                             int window, int truth_sign);

EvalReport evaluate(const RobustLossSpec& loss, const VolSeries& proxy,
                    const std::vector<VolSeries>& preds,
                    const std::vector<std::string>& names, bool scaling = true);

std::string report_to_csv(const std::vector<EvalReport>& reports);
std::string report_to_json(const std::vector<EvalReport>& reports);

}  // namespace rvol
