#include "rvol/huber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rvol {

namespace {

void check_data(std::span<const double> data, const DecayWeights& w) {
  if (data.empty()) throw std::invalid_argument("huber: data must be nonempty");
  if (static_cast<int>(data.size()) != w.size())
    throw std::invalid_argument("huber: data length must equal weight count");
}

double weighted_mean(std::span<const double> data, const DecayWeights& w) {
  double s = 0.0;
  for (size_t k = 0; k < data.size(); ++k) s += w.weights[k] * data[k];
  return s;
}

}  // namespace

double huber_loss(double x, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("huber_loss: tau must be > 0");
  const double ax = std::abs(x);
  if (ax <= tau) return 0.5 * x * x;
  return tau * ax - 0.5 * tau * tau;
}

double huber_score(double x, double tau) {
  if (!(tau > 0.0)) throw std::domain_error("huber_score: tau must be > 0");
  return std::min(std::abs(x), tau) * (x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0));
}

double weighted_objective(double theta, std::span<const double> data,
                          const DecayWeights& w, double tau) {
  check_data(data, w);
  if (!(tau > 0.0))
    throw std::domain_error("weighted_objective: tau must be > 0");
  double obj = 0.0;
  for (size_t k = 0; k < data.size(); ++k)
    obj += w.weights[k] * huber_loss(data[k] - theta, tau / w.weights[k]);
  return obj;
}

double weighted_score(double theta, std::span<const double> data,
                      const DecayWeights& w, double tau) {
  double s = 0.0;
  for (size_t k = 0; k < data.size(); ++k) {
    const double r = data[k] - theta;
    s += std::min(w.weights[k] * std::abs(r), tau) *
         (r > 0 ? 1.0 : (r < 0 ? -1.0 : 0.0));
  }
  return s;
}

double tau_equation_lhs(double tau, std::span<const double> data,
                        const DecayWeights& w, double theta) {
  double g = 0.0;
  for (size_t k = 0; k < data.size(); ++k) {
    const double wr = w.weights[k] * std::abs(data[k] - theta);
    const double clipped = std::min(wr, tau);
    g += (clipped * clipped) / (tau * tau);
  }
  return g;
}

double solve_location(std::span<const double> data, const DecayWeights& w,
                      double tau) {
  check_data(data, w);
  if (!(tau > 0.0)) throw std::domain_error("solve_location: tau must be > 0");

  const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
  const double mn = *mn_it, mx = *mx_it;
  if (mn == mx) return mn;

  const double pad = 1e-9 * (mx - mn);
  const double lo0 = mn - pad, hi0 = mx + pad;
  const double width_tol = 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(lo0), std::abs(hi0));

  // S is nonincreasing; its root set is the interval [a, b].  Locate both
  // boundaries by predicate bisection and return the midpoint.
  auto boundary = [&](auto pred) {
    // pred holds on a left interval; returns its right boundary.
    double lo = lo0, hi = hi0;
    for (int it = 0; it < 200 && hi - lo > width_tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (pred(mid))
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double a =
      boundary([&](double th) { return weighted_score(th, data, w, tau) > 0.0; });
  const double b =
      boundary([&](double th) { return weighted_score(th, data, w, tau) >= 0.0; });
  return 0.5 * (a + b);
}

TauResult solve_tau(std::span<const double> data, const DecayWeights& w,
                    double theta, double z) {
  check_data(data, w);
  if (!(z > 0.0)) throw std::domain_error("solve_tau: z must be > 0");

  double tau_max = 0.0;       // max_k w_k |r_k|
  double min_pos = std::numeric_limits<double>::infinity();
  double sumsq = 0.0;         // sum_k w_k^2 r_k^2
  int n_nonzero = 0;
  for (size_t k = 0; k < data.size(); ++k) {
    const double wr = w.weights[k] * std::abs(data[k] - theta);
    if (wr > 0.0) {
      ++n_nonzero;
      min_pos = std::min(min_pos, wr);
      tau_max = std::max(tau_max, wr);
      sumsq += wr * wr;
    }
  }

  if (n_nonzero == 0) {
    // all residuals exactly zero: tau undefined, return a tiny positive floor
    return {std::numeric_limits<double>::min(), true};
  }
  if (z >= static_cast<double>(n_nonzero)) {
    return {tau_max, true};  // g never reaches z: no truncation active
  }

  // g is continuous and nonincreasing from n_nonzero (tau -> 0+) to 0.
  // For tau >= tau_max no residual is clipped and g = sumsq / tau^2,
  // giving a closed-form root when it lies in that regime.
  if (sumsq / (tau_max * tau_max) > z) {
    return {std::sqrt(sumsq / z), false};
  }

  double lo = 0.5 * min_pos;  // g(lo) = n_nonzero > z
  double hi = tau_max;
  for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tau_equation_lhs(mid, data, w, theta) > z)
      lo = mid;
    else
      hi = mid;
  }
  return {0.5 * (lo + hi), false};
}

HuberFit tuning_free_fit(std::span<const double> data, const DecayWeights& w,
                         double z, int max_iter, double tol) {
  check_data(data, w);
  if (!(z > 0.0)) throw std::domain_error("tuning_free_fit: z must be > 0");

  HuberFit fit;
  fit.z = z;
  fit.theta = weighted_mean(data, w);
  fit.tau = 0.0;

  // scale-relative stopping so the fit is exactly scale-equivariant
  double scale = 0.0;
  for (double d : data) scale = std::max(scale, std::abs(d));
  if (scale == 0.0) scale = 1.0;

  for (int it = 1; it <= max_iter; ++it) {
    const TauResult tr = solve_tau(data, w, fit.theta, z);
    const double theta_new =
        tr.tau > 0.0 ? solve_location(data, w, tr.tau) : fit.theta;
    fit.iterations = it;
    const bool theta_ok = std::abs(theta_new - fit.theta) <= tol * scale;
    const bool tau_ok = std::abs(tr.tau - fit.tau) <= tol * scale;
    fit.theta = theta_new;
    fit.tau = tr.tau;
    fit.tau_fallback = tr.fallback;
    if (theta_ok && tau_ok) {
      fit.converged = true;
      break;
    }
  }
  return fit;
}

}  // namespace rvol
