#pragma once

#include <string>
#include <vector>

#include "rvol/weights.hpp"

namespace rvol {

/// Time-indexed arithmetic returns.  Dates are optional (empty for
/// simulated data); when present they align one-to-one with values.
struct ReturnSeries {
  std::vector<std::string> dates;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
};

struct VolMeta {
  std::string method;
  double lambda = 1.0;
  int m = 0;
  double z = 0.0;
  double T_used = 0.0;
  Direction direction = Direction::Forward;
  int floored_count = 0;  // negative solutions floored at zero
};

/// Time-indexed variance estimates (proxy or predictor) aligned to the
/// input series; valid is false inside priming windows.
struct VolSeries {
  std::vector<double> values;
  std::vector<char> valid;
  VolMeta meta;

  int size() const { return static_cast<int>(values.size()); }
};

}  // namespace rvol
