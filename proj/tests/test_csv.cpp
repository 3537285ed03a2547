#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "rvol/csv.hpp"

using namespace rvol;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("rvol_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++) + ".csv");
    std::ofstream(path) << contents;
  }
  ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

}  // namespace

TEST_CASE("well-formed file round trips") {
  const TempFile f(
      "date,return\n"
      "2021-01-04,0.0123\n"
      "2021-01-05,-0.004\n"
      "2021-01-06,0\n");
  const ReturnSeries r = load_returns_csv(f.path.string());
  REQUIRE(r.size() == 3);
  CHECK(r.dates[0] == "2021-01-04");
  CHECK(r.dates[2] == "2021-01-06");
  CHECK(r.values[0] == doctest::Approx(0.0123));
  CHECK(r.values[1] == doctest::Approx(-0.004));
  CHECK(r.values[2] == 0.0);
}

TEST_CASE("scientific notation and extreme values parse") {
  const TempFile f(
      "date,return\n"
      "2021-01-04,1e-8\n"
      "2021-01-05,-2.5E-3\n");
  const ReturnSeries r = load_returns_csv(f.path.string());
  CHECK(r.values[0] == doctest::Approx(1e-8));
  CHECK(r.values[1] == doctest::Approx(-2.5e-3));
}

TEST_CASE("malformed inputs raise DataError with the line number") {
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_returns_csv("/nonexistent/returns.csv"), DataError);
  }
  SUBCASE("bad header") {
    const TempFile f("timestamp,ret\n2021-01-04,0.1\n");
    CHECK_THROWS_AS(load_returns_csv(f.path.string()), DataError);
  }
  SUBCASE("bad date format") {
    const TempFile f("date,return\n04/01/2021,0.1\n");
    try {
      load_returns_csv(f.path.string());
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }
  SUBCASE("non-increasing dates") {
    const TempFile f(
        "date,return\n2021-01-05,0.1\n2021-01-05,0.2\n");
    try {
      load_returns_csv(f.path.string());
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
  }
  SUBCASE("unparseable number") {
    const TempFile f("date,return\n2021-01-04,abc\n");
    CHECK_THROWS_AS(load_returns_csv(f.path.string()), DataError);
  }
  SUBCASE("non-finite value") {
    const TempFile f("date,return\n2021-01-04,inf\n");
    CHECK_THROWS_AS(load_returns_csv(f.path.string()), DataError);
  }
  SUBCASE("missing field") {
    const TempFile f("date,return\n2021-01-04\n");
    CHECK_THROWS_AS(load_returns_csv(f.path.string()), DataError);
  }
  SUBCASE("empty file") {
    const TempFile f("");
    CHECK_THROWS_AS(load_returns_csv(f.path.string()), DataError);
  }
}

TEST_CASE("blank trailing line is tolerated") {
  const TempFile f("date,return\n2021-01-04,0.5\n\n");
  const ReturnSeries r = load_returns_csv(f.path.string());
  CHECK(r.size() == 1);
}

TEST_CASE("fmt_double shortest round trip") {
  CHECK(fmt_double(0.5) == "0.5");
  CHECK(fmt_double(0.0) == "0");
  CHECK(fmt_double(-3.0) == "-3");
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.2250738585072014e-308}) {
    const std::string s = fmt_double(x);
    CHECK(std::stod(s) == x);
  }
}
