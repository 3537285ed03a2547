#pragma once

#include <vector>

namespace rvol {

enum class Direction { Forward, Backward };

/// Normalized exponential-decay weight vector anchored at a time index t.
/// Forward: weights[k] corresponds to time t+k (proxy data).
/// Backward: weights[k] corresponds to time t-1-k (predictor data).
/// Offsets are stored instead of absolute timestamps.
struct DecayWeights {
  double lambda = 1.0;
  int m = 0;  // window length minus one
  Direction direction = Direction::Forward;
  std::vector<double> weights;  // size m+1, sums to 1
  double n_eff = 1.0;           // 1 / sum(weights^2)

  int size() const { return m + 1; }
};

/// Weighted volatility bias (variance units) and weighted squared
/// deviation (variance^2 units) of a volatility path around its anchor.
struct SmoothnessDiag {
  double delta0 = 0.0;
  double delta1 = 0.0;
};

// lambda in (0,1], m >= 0.  lambda = 1 gives uniform weights 1/(m+1).
DecayWeights make_weights(double lambda, int m, Direction direction);

// (1+lambda)(1-lambda^(m+1)) / ((1-lambda)(1+lambda^(m+1))); lambda in (0,1).
double n_eff_closed_form(double lambda, int m);

// lambda = 2^(-1/l) and its inverse.
double half_life_to_lambda(double l);
double lambda_to_half_life(double lambda);

// Default window length: twice the half-life, rounded to nearest integer.
int half_life_to_window(double l);

// delta0 = sum_k w_k sigma2_window[k] - sigma2[t],
// delta1 = sum_k w_k^2 (sigma2_window[k] - sigma2[t])^2,
// where the window follows the weight direction around anchor t.
SmoothnessDiag smoothness_diag(const std::vector<double>& vol_path,
                               const DecayWeights& w, int t);

}  // namespace rvol
