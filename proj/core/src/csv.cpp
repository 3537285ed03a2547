#include "rvol/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rvol {

namespace {

bool valid_iso_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": " << what;
  throw DataError(os.str());
}

}  // namespace

ReturnSeries load_returns_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");

  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "date,return")
    fail(path, lineno, "expected header \"date,return\"");

  ReturnSeries out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;  // tolerate blank lines (e.g. trailing newline)
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(path, lineno, "missing comma");
    const std::string date = line.substr(0, comma);
    const std::string value_str = line.substr(comma + 1);
    if (!valid_iso_date(date))
      fail(path, lineno, "invalid ISO-8601 date \"" + date + "\"");
    if (!out.dates.empty() && date <= out.dates.back())
      fail(path, lineno, "dates must be strictly increasing (\"" + date +
                             "\" after \"" + out.dates.back() + "\")");
    double v = 0.0;
    const char* begin = value_str.data();
    const char* end = begin + value_str.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
      fail(path, lineno, "invalid return value \"" + value_str + "\"");
    if (!std::isfinite(v))
      fail(path, lineno, "nonfinite return value");
    out.dates.push_back(date);
    out.values.push_back(v);
  }
  if (out.values.empty()) throw DataError(path + ": no data rows");
  return out;
}

std::string fmt_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace rvol
