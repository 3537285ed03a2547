#pragma once

#include <limits>
#include <string>

#include "rvol/predictors.hpp"
#include "rvol/proxies.hpp"

namespace rvol {

struct PredictorConfig {
  enum class Method { Ewma, ClippedEwma, Huber };
  std::string name;
  Method method = Method::Ewma;
  double half_life = 14.0;
  int window = 0;     // past points used; 0 = 2 * half_life
  double z = 0.0;     // 0 = log(backward n_eff)
  double clip = std::numeric_limits<double>::infinity();

  int effective_window() const;
  double effective_z() const;
};

struct ProxyConfig {
  enum class Method { Ewma, ClipSingle, ClipEwma, Huber };
  std::string name;
  Method method = Method::Ewma;
  double half_life = 7.0;
  int m = 0;          // forward window length minus one; 0 = 2 * half_life
  double z = 0.0;     // 0 = 2 log(forward n_eff)
  double T = 0.0;     // inflation horizon; 0 = caller supplies effective length

  int effective_m() const;
  double effective_z() const;
};

VolSeries run_predictor(const ReturnSeries& returns, const PredictorConfig& cfg);

// T_full is used when cfg.T == 0 ("full" policy).
VolSeries run_proxy(const ReturnSeries& returns, const ProxyConfig& cfg,
                    double T_full);

}  // namespace rvol
