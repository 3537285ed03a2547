#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rvol/losses.hpp"
#include "rvol/pipeline.hpp"
#include "rvol/series.hpp"

namespace rvol {

struct IidDist {
  enum class Kind { LogNormal01, StudentT };
  Kind kind = Kind::LogNormal01;
  double df = 3.0;  // StudentT only

  double true_variance() const;
  std::string label() const;
};

// Deterministic given seed.
std::vector<double> sample_iid(const IidDist& dist, int n, std::uint64_t seed);

// Plug-in variance Var = E[Y^2] - (E[Y])^2 with three mean estimators.
double variance_sample(std::span<const double> data);
// Two-sided trimming outside the empirical [alpha, 1-alpha] quantile band,
// applied independently to {Y} and {Y^2}; winsorize clamps instead of drops.
double variance_trimmed(std::span<const double> data, double alpha,
                        bool winsorize = false);
// Unweighted tuning-free Huber mean for each of {Y} and {Y^2}.
double variance_huber(std::span<const double> data, double z);

struct MCCell {
  std::string method;  // "sample" | "trimmed" | "huber"
  double param = 0.0;  // alpha or z (0 for sample)
  double mse_mean = 0.0, mse_se = 0.0;
  double ql_mean = 0.0, ql_se = 0.0;
  int ql_skipped = 0;  // replications with nonpositive variance estimate
  int reps = 0;
};

struct MCStudyResult {
  std::string dist;
  int n = 0;
  int reps = 0;
  std::uint64_t seed = 0;
  std::vector<MCCell> cells;
};

MCStudyResult mc_variance_study(const IidDist& dist, int n, int reps,
                                const std::vector<double>& alpha_grid,
                                const std::vector<double>& z_grid,
                                std::uint64_t seed, bool winsorize = false);

std::string mc_study_to_csv(const MCStudyResult& r);

struct VolPathModel {
  enum class Kind { Constant, RegimeSwitch, Sinusoid };
  enum class Innovation { Gaussian, StudentT, LogNormalCentered };
  Kind kind = Kind::Constant;
  double var1 = 1e-4;       // base variance level
  double var2 = 1e-4;       // second regime level / unused
  int switch_time = 0;      // RegimeSwitch
  double period = 50.0;     // Sinusoid
  double amplitude = 0.0;   // Sinusoid, variance units; |amplitude| < var1
  Innovation innovation = Innovation::Gaussian;
  double df = 3.0;          // StudentT only, > 2

  std::vector<double> variance_path(int T) const;
};

// X_t = sigma_t * eps_t with unit-variance innovations; returns the series
// and the true variance path.
std::pair<ReturnSeries, std::vector<double>> simulate_returns(
    const VolPathModel& model, int T, std::uint64_t seed);

struct ExperimentResult {
  std::vector<EvalReport> proxy_reports;  // one per (proxy, loss)
  std::vector<EvalReport> truth_reports;  // one per loss, scored vs truth
};

ExperimentResult end_to_end_experiment(
    const VolPathModel& model, int T,
    const std::vector<PredictorConfig>& predictors,
    const std::vector<ProxyConfig>& proxies,
    const std::vector<RobustLossSpec>& losses, std::uint64_t seed);

}  // namespace rvol
