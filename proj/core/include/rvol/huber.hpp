#pragma once

#include <span>

#include "rvol/weights.hpp"

namespace rvol {

/// Joint solution of the tuning-free weighted Huber equations.
struct HuberFit {
  double theta = 0.0;  // location estimate
  double tau = 0.0;    // robustification parameter (weighted parameterization)
  double z = 0.0;      // deviation parameter
  int iterations = 0;
  bool converged = false;
  // true when the tau equation had no root and tau was set to the
  // no-truncation value max_k w_k |data_k - theta|
  bool tau_fallback = false;
};

struct TauResult {
  double tau = 0.0;
  bool fallback = false;
};

// x^2/2 inside [-tau, tau], linear tau|x| - tau^2/2 outside.
double huber_loss(double x, double tau);

// psi_tau(x) = min(|x|, tau) sgn(x); derivative of huber_loss.
double huber_score(double x, double tau);

// sum_k w_k * huber_loss(data_k - theta, tau / w_k)
double weighted_objective(double theta, std::span<const double> data,
                          const DecayWeights& w, double tau);

// S(theta) = sum_k w_k min(|data_k - theta|, tau/w_k) sgn(data_k - theta);
// nonincreasing in theta.
double weighted_score(double theta, std::span<const double> data,
                      const DecayWeights& w, double tau);

// g(tau) = sum_k w_k^2 min(|data_k - theta|^2, tau^2/w_k^2) / tau^2
double tau_equation_lhs(double tau, std::span<const double> data,
                        const DecayWeights& w, double theta);

// Root of the weighted score equation.  The root set is an interval; the
// midpoint is returned.
double solve_location(std::span<const double> data, const DecayWeights& w,
                      double tau);

// Root of g(tau) = z.  When z >= count of nonzero residuals there is no
// root and the no-truncation value is returned with fallback = true.
TauResult solve_tau(std::span<const double> data, const DecayWeights& w,
                    double theta, double z);

// Alternates solve_tau and solve_location starting from the weighted mean.
HuberFit tuning_free_fit(std::span<const double> data, const DecayWeights& w,
                         double z, int max_iter = 100, double tol = 1e-9);

}  // namespace rvol
