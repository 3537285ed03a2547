#include "rvol/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rvol/huber.hpp"
#include "rvol/rng.hpp"

namespace rvol {

double IidDist::true_variance() const {
  switch (kind) {
    case Kind::LogNormal01:
      return std::exp(2.0) - std::exp(1.0);
    case Kind::StudentT:
      return df / (df - 2.0);
  }
  throw std::invalid_argument("IidDist: unsupported distribution");
}

std::string IidDist::label() const {
  if (kind == Kind::LogNormal01) return "lognormal";
  std::ostringstream os;
  os << "t" << df;
  return os.str();
}

std::vector<double> sample_iid(const IidDist& dist, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_iid: n must be >= 1");
  Rng rng(seed);
  std::vector<double> out(n);
  switch (dist.kind) {
    case IidDist::Kind::LogNormal01:
      for (auto& x : out) x = rng.lognormal();
      break;
    case IidDist::Kind::StudentT:
      for (auto& x : out) x = rng.student_t(dist.df);
      break;
  }
  return out;
}

namespace {

void check_finite(std::span<const double> data) {
  for (double x : data)
    if (!std::isfinite(x))
      throw std::invalid_argument("variance estimator: nonfinite input");
}

double sample_mean(std::span<const double> data) {
  double s = 0.0;
  for (double x : data) s += x;
  return s / static_cast<double>(data.size());
}

double trimmed_mean(std::span<const double> data, double alpha,
                    bool winsorize) {
  const int n = static_cast<int>(data.size());
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const int k = static_cast<int>(std::floor(alpha * n));
  if (2 * k >= n)
    throw std::invalid_argument("trimmed_mean: all observations trimmed");
  if (winsorize) {
    const double lo = sorted[k], hi = sorted[n - 1 - k];
    double s = 0.0;
    for (double x : sorted) s += std::clamp(x, lo, hi);
    return s / n;
  }
  double s = 0.0;
  for (int i = k; i < n - k; ++i) s += sorted[i];
  return s / (n - 2 * k);
}

double huber_mean(std::span<const double> data, double z) {
  const DecayWeights w = make_weights(
      1.0, static_cast<int>(data.size()) - 1, Direction::Forward);
  return tuning_free_fit(data, w, z).theta;
}

std::vector<double> squares(std::span<const double> data) {
  std::vector<double> sq(data.size());
  for (size_t i = 0; i < sq.size(); ++i) sq[i] = data[i] * data[i];
  return sq;
}

struct Welford {
  int n = 0;
  double mean = 0.0, m2 = 0.0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double se() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / (n - 1) / n);
  }
};

}  // namespace

double variance_sample(std::span<const double> data) {
  if (data.size() < 2)
    throw std::invalid_argument("variance_sample: need at least 2 points");
  check_finite(data);
  const double m1 = sample_mean(data);
  return sample_mean(squares(data)) - m1 * m1;
}

double variance_trimmed(std::span<const double> data, double alpha,
                        bool winsorize) {
  if (data.size() < 2)
    throw std::invalid_argument("variance_trimmed: need at least 2 points");
  if (alpha < 0.0 || alpha >= 0.5)
    throw std::domain_error("variance_trimmed: alpha must be in [0, 0.5)");
  check_finite(data);
  const double m1 = trimmed_mean(data, alpha, winsorize);
  const double m2 = trimmed_mean(squares(data), alpha, winsorize);
  return m2 - m1 * m1;
}

double variance_huber(std::span<const double> data, double z) {
  if (data.size() < 2)
    throw std::invalid_argument("variance_huber: need at least 2 points");
  if (!(z > 0.0)) throw std::domain_error("variance_huber: z must be > 0");
  check_finite(data);
  const double m1 = huber_mean(data, z);
  const double m2 = huber_mean(squares(data), z);
  return m2 - m1 * m1;
}

MCStudyResult mc_variance_study(const IidDist& dist, int n, int reps,
                                const std::vector<double>& alpha_grid,
                                const std::vector<double>& z_grid,
                                std::uint64_t seed, bool winsorize) {
  if (reps < 1) throw std::invalid_argument("mc_variance_study: reps >= 1");
  const double truth = dist.true_variance();

  struct Acc {
    std::string method;
    double param;
    Welford mse, ql;
    int ql_skipped = 0;
  };
  std::vector<Acc> accs;
  accs.push_back({"sample", 0.0, {}, {}, 0});
  for (double a : alpha_grid) accs.push_back({"trimmed", a, {}, {}, 0});
  for (double z : z_grid) accs.push_back({"huber", z, {}, {}, 0});

  for (int r = 0; r < reps; ++r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    std::vector<double> y(n);
    for (auto& x : y)
      x = (dist.kind == IidDist::Kind::LogNormal01) ? rng.lognormal()
                                                    : rng.student_t(dist.df);
    for (auto& acc : accs) {
      double est;
      if (acc.method == "sample")
        est = variance_sample(y);
      else if (acc.method == "trimmed")
        est = variance_trimmed(y, acc.param, winsorize);
      else
        est = variance_huber(y, acc.param);
      acc.mse.add(mse(truth, est));
      if (est > 0.0)
        acc.ql.add(ql(truth, est));
      else
        ++acc.ql_skipped;
    }
  }

  MCStudyResult out;
  out.dist = dist.label();
  out.n = n;
  out.reps = reps;
  out.seed = seed;
  for (const auto& acc : accs) {
    MCCell c;
    c.method = acc.method;
    c.param = acc.param;
    c.mse_mean = acc.mse.mean;
    c.mse_se = acc.mse.se();
    c.ql_mean = acc.ql.mean;
    c.ql_se = acc.ql.se();
    c.ql_skipped = acc.ql_skipped;
    c.reps = reps;
    out.cells.push_back(c);
  }
  return out;
}

std::string mc_study_to_csv(const MCStudyResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "dist,n,reps,method,param,mse_mean,mse_se,ql_mean,ql_se,ql_skipped\n";
  for (const auto& c : r.cells)
    os << r.dist << ',' << r.n << ',' << r.reps << ',' << c.method << ','
       << c.param << ',' << c.mse_mean << ',' << c.mse_se << ',' << c.ql_mean
       << ',' << c.ql_se << ',' << c.ql_skipped << '\n';
  return os.str();
}

std::vector<double> VolPathModel::variance_path(int T) const {
  if (T < 1) throw std::invalid_argument("variance_path: T must be >= 1");
  if (!(var1 > 0.0))
    throw std::invalid_argument("variance_path: var1 must be > 0");
  std::vector<double> path(T, var1);
  switch (kind) {
    case Kind::Constant:
      break;
    case Kind::RegimeSwitch:
      if (!(var2 > 0.0))
        throw std::invalid_argument("variance_path: var2 must be > 0");
      for (int t = switch_time; t < T; ++t) path[t] = var2;
      break;
    case Kind::Sinusoid:
      if (!(var1 - std::abs(amplitude) > 0.0))
        throw std::invalid_argument(
            "variance_path: |amplitude| must be < var1");
      if (!(period > 0.0))
        throw std::invalid_argument("variance_path: period must be > 0");
      for (int t = 0; t < T; ++t)
        path[t] = var1 + amplitude * std::sin(2.0 * M_PI * t / period);
      break;
  }
  return path;
}

std::pair<ReturnSeries, std::vector<double>> simulate_returns(
    const VolPathModel& model, int T, std::uint64_t seed) {
  std::vector<double> path = model.variance_path(T);
  Rng rng(seed);
  ReturnSeries rs;
  rs.values.resize(T);
  const double ln_mean = std::exp(0.5);
  const double ln_sd = std::sqrt(std::exp(2.0) - std::exp(1.0));
  for (int t = 0; t < T; ++t) {
    double eps;
    switch (model.innovation) {
      case VolPathModel::Innovation::Gaussian:
        eps = rng.normal();
        break;
      case VolPathModel::Innovation::StudentT:
        eps = rng.student_t(model.df) * std::sqrt((model.df - 2.0) / model.df);
        break;
      case VolPathModel::Innovation::LogNormalCentered:
        eps = (rng.lognormal() - ln_mean) / ln_sd;
        break;
      default:
        throw std::invalid_argument("simulate_returns: unknown innovation");
    }
    rs.values[t] = std::sqrt(path[t]) * eps;
  }
  return {std::move(rs), std::move(path)};
}

ExperimentResult end_to_end_experiment(
    const VolPathModel& model, int T,
    const std::vector<PredictorConfig>& predictors,
    const std::vector<ProxyConfig>& proxies,
    const std::vector<RobustLossSpec>& losses, std::uint64_t seed) {
  auto [returns, truth_path] = simulate_returns(model, T, seed);

  int max_window = 0;
  std::vector<VolSeries> preds;
  std::vector<std::string> names;
  for (const auto& pc : predictors) {
    preds.push_back(run_predictor(returns, pc));
    names.push_back(preds.back().meta.method);
    max_window = std::max(max_window, pc.effective_window());
  }

  ExperimentResult res;
  for (const auto& xc : proxies) {
    const double T_full =
        static_cast<double>(T - max_window - xc.effective_m());
    const VolSeries proxy = run_proxy(returns, xc, std::max(T_full, 1.0));
    for (const auto& loss : losses)
      res.proxy_reports.push_back(evaluate(loss, proxy, preds, names));
  }

  VolSeries truth;
  truth.values = truth_path;
  truth.valid.assign(truth_path.size(), 1);
  truth.meta.method = "truth";
  for (const auto& loss : losses)
    res.truth_reports.push_back(evaluate(loss, truth, preds, names));
  return res;
}

}  // namespace rvol
