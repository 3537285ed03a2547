#pragma once

#include "rvol/series.hpp"

namespace rvol {

// Ex-ante predictors built from the backward window X_{t-m} .. X_{t-1}
// (m past points; the first m points of each output are invalid).

// values[t] = sum_{s=t-m}^{t-1} nu_{s,t} X_s^2
VolSeries ewma_predictor(const ReturnSeries& returns, double lambda, int m);

// values[t] = min(ewma value, M).  M = +inf disables the clip.
VolSeries clipped_ewma_predictor(const ReturnSeries& returns, double lambda,
                                 int m, double clip);

// Tuning-free weighted Huber fit on the backward window; no tau inflation.
VolSeries huber_predictor(const ReturnSeries& returns, double lambda, int m,
                          double z);

}  // namespace rvol
