#pragma once

#include <stdexcept>
#include <string>

#include "rvol/series.hpp"

namespace rvol {

/// Thrown on malformed input data; message carries the offending line number.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expects header "date,return", ISO-8601 dates strictly increasing,
// finite decimal returns.
ReturnSeries load_returns_csv(const std::string& path);

// Shortest round-trip decimal representation.
std::string fmt_double(double x);

}  // namespace rvol
