#include "rvol/losses.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rvol {

double mse(double sigma2, double h) {
  const double d = sigma2 - h;
  return d * d;
}

double ql(double sigma2, double h) {
  if (!(sigma2 > 0.0) || !(h > 0.0))
    throw std::domain_error("ql: both arguments must be > 0");
  const double r = sigma2 / h;
  return r - std::log(r) - 1.0;
}

RobustLossSpec mse_loss() {
  RobustLossSpec s;
  s.name = "mse";
  s.eval = mse;
  s.C = [](double h) { return -2.0 * h; };
  s.f = [](double h) { return h * h; };
  s.has_closed_form_scale = true;
  return s;
}

RobustLossSpec ql_loss() {
  RobustLossSpec s;
  s.name = "ql";
  s.eval = ql;
  s.C = [](double h) { return 1.0 / h; };
  s.f = [](double h) { return std::log(h); };
  s.requires_positive = true;
  s.has_closed_form_scale = true;
  return s;
}

std::vector<int> joint_valid_indices(
    const VolSeries& proxy, const std::vector<const VolSeries*>& preds) {
  std::vector<int> idx;
  for (int t = 0; t < proxy.size(); ++t) {
    if (!proxy.valid[t]) continue;
    bool ok = true;
    for (const VolSeries* p : preds) {
      if (t >= p->size() || !p->valid[t]) {
        ok = false;
        break;
      }
    }
    if (ok) idx.push_back(t);
  }
  return idx;
}

namespace {

std::vector<int> overlap(const RobustLossSpec& loss, const VolSeries& proxy,
                         const VolSeries& pred) {
  std::vector<int> idx = joint_valid_indices(proxy, {&pred});
  if (idx.empty())
    throw std::invalid_argument("losses: no jointly valid time points");
  if (loss.requires_positive) {
    for (int t : idx)
      if (!(proxy.values[t] > 0.0) || !(pred.values[t] > 0.0))
        throw std::domain_error(
            "losses: nonpositive value reached a positive-domain loss; "
            "filter or floor upstream");
  }
  return idx;
}

double mean_loss_at(const RobustLossSpec& loss, const VolSeries& proxy,
                    const VolSeries& pred, const std::vector<int>& idx,
                    double beta) {
  double s = 0.0;
  for (int t : idx) s += loss.eval(proxy.values[t], beta * pred.values[t]);
  return s / static_cast<double>(idx.size());
}

double golden_section_scale(const RobustLossSpec& loss, const VolSeries& proxy,
                            const VolSeries& pred, const std::vector<int>& idx) {
  // bracket the minimizer in log space, then golden-section to 1e-10 rel
  auto obj = [&](double b) { return mean_loss_at(loss, proxy, pred, idx, b); };
  double lo = 1e-6, hi = 1e6;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = obj(c), fd = obj(d);
  while (b - a > 1e-10 * (1.0 + std::abs(a))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = obj(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = obj(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double optimal_scale(const RobustLossSpec& loss, const VolSeries& proxy,
                     const VolSeries& pred) {
  const std::vector<int> idx = overlap(loss, proxy, pred);
  if (loss.has_closed_form_scale && loss.name == "mse") {
    double num = 0.0, den = 0.0;
    for (int t : idx) {
      num += pred.values[t] * proxy.values[t];
      den += pred.values[t] * pred.values[t];
    }
    if (!(den > 0.0))
      throw std::domain_error("optimal_scale: degenerate predictor series");
    return num / den;
  }
  if (loss.has_closed_form_scale && loss.name == "ql") {
    double s = 0.0;
    for (int t : idx) s += proxy.values[t] / pred.values[t];
    return s / static_cast<double>(idx.size());
  }
  return golden_section_scale(loss, proxy, pred, idx);
}

double aggregate_loss(const RobustLossSpec& loss, const VolSeries& proxy,
                      const VolSeries& pred, std::optional<double> scale) {
  const std::vector<int> idx = overlap(loss, proxy, pred);
  return mean_loss_at(loss, proxy, pred, idx, scale.value_or(1.0));
}

std::vector<double> rolling_loss_difference(const RobustLossSpec& loss,
                                            const VolSeries& proxy,
                                            const VolSeries& predA,
                                            const VolSeries& predB,
                                            int window) {
  if (window < 1)
    throw std::invalid_argument("rolling_loss_difference: window must be >= 1");
  const std::vector<int> idx = joint_valid_indices(proxy, {&predA, &predB});
  if (static_cast<int>(idx.size()) < window)
    throw std::invalid_argument(
        "rolling_loss_difference: overlap shorter than window");
  std::vector<double> diff(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    const int t = idx[i];
    diff[i] = loss.eval(proxy.values[t], predA.values[t]) -
              loss.eval(proxy.values[t], predB.values[t]);
  }
  std::vector<double> out;
  out.reserve(idx.size() - window + 1);
  for (size_t i = window - 1; i < diff.size(); ++i) {
    double s = 0.0;
    for (size_t j = i + 1 - window; j <= i; ++j) s += diff[j];
    out.push_back(s / window);
  }
  return out;
}

double false_comparison_rate(const std::vector<double>& lossA_series,
                             const std::vector<double>& lossB_series,
                             int window, int truth_sign) {
  if (window < 1)
    throw std::invalid_argument("false_comparison_rate: window must be >= 1");
  if (lossA_series.size() != lossB_series.size())
    throw std::invalid_argument("false_comparison_rate: length mismatch");
  const int n = static_cast<int>(lossA_series.size());
  if (n < window)
    throw std::invalid_argument("false_comparison_rate: series shorter than window");
  int false_count = 0, windows = 0;
  for (int i = window - 1; i < n; ++i) {
    double s = 0.0;
    for (int j = i + 1 - window; j <= i; ++j)
      s += lossA_series[j] - lossB_series[j];
    ++windows;
    if (s * truth_sign < 0.0) ++false_count;
  }
  return static_cast<double>(false_count) / windows;
}

EvalReport evaluate(const RobustLossSpec& loss, const VolSeries& proxy,
                    const std::vector<VolSeries>& preds,
                    const std::vector<std::string>& names, bool scaling) {
  if (preds.size() != names.size())
    throw std::invalid_argument("evaluate: names/predictors length mismatch");
  EvalReport rep;
  rep.loss_name = loss.name;
  rep.proxy_name = proxy.meta.method;
  std::vector<const VolSeries*> ptrs;
  for (const auto& p : preds) ptrs.push_back(&p);
  rep.T_effective = static_cast<int>(joint_valid_indices(proxy, ptrs).size());
  for (size_t i = 0; i < preds.size(); ++i) {
    PredictorEval row;
    row.name = names[i];
    row.raw_loss = aggregate_loss(loss, proxy, preds[i]);
    if (scaling) {
      row.beta = optimal_scale(loss, proxy, preds[i]);
      row.scaled_loss = aggregate_loss(loss, proxy, preds[i], row.beta);
    } else {
      row.beta = 1.0;
      row.scaled_loss = row.raw_loss;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

std::string report_to_csv(const std::vector<EvalReport>& reports) {
  std::ostringstream os;
  os << "loss,proxy,predictor,raw,scaled,beta,T_effective\n";
  os.precision(17);
  for (const auto& rep : reports)
    for (const auto& row : rep.rows)
      os << rep.loss_name << ',' << rep.proxy_name << ',' << row.name << ','
         << row.raw_loss << ',' << row.scaled_loss << ',' << row.beta << ','
         << rep.T_effective << '\n';
  return os.str();
}

std::string report_to_json(const std::vector<EvalReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& rep : reports) {
    nlohmann::json j;
    j["loss"] = rep.loss_name;
    j["proxy"] = rep.proxy_name;
    j["T_effective"] = rep.T_effective;
    j["predictors"] = nlohmann::json::array();
    for (const auto& row : rep.rows)
      j["predictors"].push_back({{"name", row.name},
                                 {"raw", row.raw_loss},
                                 {"scaled", row.scaled_loss},
                                 {"beta", row.beta}});
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace rvol
