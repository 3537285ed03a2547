#pragma once

#include "rvol/series.hpp"

namespace rvol {

// Ex-post proxies built from the forward window X_t .. X_{t+m}.
// The last m points of each output are invalid (proxy priming).

// values[t] = sum_k w_k X_{t+k}^2
VolSeries ewma_proxy(const ReturnSeries& returns, double lambda, int m);

// Clipped single squared return: values[t] = min(X_t^2, tau_t sqrt(n_eff T)),
// tau_t from the standalone equation over raw fourth moments.
VolSeries clipped_single_proxy(const ReturnSeries& returns, double lambda,
                               int m, double z, double T);

// values[t] = sum_k min(w_k X_{t+k}^2, tau_t sqrt(T / n_eff))
VolSeries clipped_ewma_proxy(const ReturnSeries& returns, double lambda, int m,
                             double z, double T);

// Tuning-free fit on the forward window, then re-solve the location with
// the inflated threshold c_t = tau_t sqrt(T / n_eff); floored at zero.
VolSeries huber_proxy(const ReturnSeries& returns, double lambda, int m,
                      double z, double T);

}  // namespace rvol
