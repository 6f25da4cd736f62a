#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "rsl/curve.hpp"
#include "rsl/curve_io.hpp"
#include "rsl/rng.hpp"

using rsl::CurveRow;
using rsl::CurveSource;
using rsl::EnergyCurve;
using rsl::ModelKind;

namespace {

EnergyCurve sample_exact_curve() {
  EnergyCurve c;
  c.n = 64;
  c.model = ModelKind::kRnn;
  c.source = CurveSource::kExact;
  c.metadata = {{"mode", "rational"}, {"version", "0.1.0"}};
  c.rows = {
      {0, 1.0, 0.0, std::nullopt, {}},
      {1, 1.0 / 3.0, std::log(1.0 / 3.0), std::nullopt, {}},
      {5, 1e300, 690.77552789821368, std::nullopt, {}},
      {9, std::numeric_limits<double>::infinity(), 1234.5678901234567, std::nullopt, {}},
  };
  return c;
}

EnergyCurve random_mc_curve(std::uint64_t seed) {
  rsl::Xoshiro256pp rng(seed);
  EnergyCurve c;
  c.n = 1 + static_cast<long>(rng.next() % 500);
  c.model = rng.next() % 2 ? ModelKind::kRnn : ModelKind::kLru;
  c.source = CurveSource::kMc;
  c.metadata = {{"seed", "42"}, {"field", "complex"}, {"samples", "100"}};
  long depth = 0;
  const int rows = 1 + static_cast<int>(rng.next() % 20);
  for (int i = 0; i < rows; ++i) {
    CurveRow row;
    row.depth = depth;
    depth += 1 + static_cast<long>(rng.next() % 3);
    // stress the serialization with full-precision mantissas
    row.value = rng.uniform01() * std::pow(10.0, static_cast<double>(rng.next() % 600) - 300.0);
    row.log_value = std::log(row.value);
    row.stderr_value = rng.uniform01();
    if (rng.next() % 4 == 0) row.flags = {"nonfinite=" + std::to_string(rng.next() % 99)};
    c.rows.push_back(row);
  }
  return c;
}

bool rows_identical(const EnergyCurve& a, const EnergyCurve& b) {
  if (a.n != b.n || a.model != b.model || a.source != b.source || a.metadata != b.metadata)
    return false;
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    // bit-for-bit on the doubles; inf == inf is fine here
    if (x.depth != y.depth || x.value != y.value || x.log_value != y.log_value) return false;
    if (x.stderr_value != y.stderr_value || x.flags != y.flags) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("csv and json round-trips are exact") {
  const EnergyCurve exact = sample_exact_curve();
  {
    std::stringstream buf;
    rsl::write_csv(exact, buf);
    CHECK(rows_identical(rsl::read_csv(buf), exact));
  }
  {
    std::stringstream buf;
    rsl::write_json(exact, buf);
    CHECK(rows_identical(rsl::read_json(buf), exact));
  }

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const EnergyCurve curve = random_mc_curve(seed);
    std::stringstream csv;
    rsl::write_csv(curve, csv);
    CAPTURE(seed);
    REQUIRE(rows_identical(rsl::read_csv(csv), curve));
    std::stringstream js;
    rsl::write_json(curve, js);
    REQUIRE(rows_identical(rsl::read_json(js), curve));
  }
}

TEST_CASE("csv layout") {
  std::stringstream buf;
  rsl::write_csv(sample_exact_curve(), buf);
  const std::string text = buf.str();
  CHECK(text.find("# n=64\n") != std::string::npos);
  CHECK(text.find("# model=rnn\n") != std::string::npos);
  CHECK(text.find("# source=exact\n") != std::string::npos);
  CHECK(text.find("depth,value,log_value\n") != std::string::npos);
  // 17 significant digits survive
  CHECK(text.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("format_double round-trips doubles") {
  for (double v : {3.141592653589793, 1.0000000000000002, 5e-324, 1.7976931348623157e308}) {
    CHECK(std::strtod(rsl::format_double(v).c_str(), nullptr) == v);
  }
  CHECK(rsl::format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("curve validation rejects malformed curves") {
  EnergyCurve c = sample_exact_curve();
  c.rows[1].depth = 0;  // duplicate depth
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = sample_exact_curve();
  c.rows[0].stderr_value = 0.1;  // stderr on an exact curve
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = sample_exact_curve();
  c.rows[0].log_value = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = random_mc_curve(3);
  c.rows[0].stderr_value.reset();  // missing stderr on mc
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("csv parse errors") {
  const auto parse = [](const std::string& text) {
    std::stringstream buf(text);
    return rsl::read_csv(buf);
  };
  CHECK_THROWS_AS((void)parse(""), std::invalid_argument);
  CHECK_THROWS_AS((void)parse("# n=4\n# model=rnn\n# source=exact\nwrong,header\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)parse("# model=rnn\n# source=exact\ndepth,value,log_value\n0,1,0\n"),
                  std::invalid_argument);  // missing n
  CHECK_THROWS_AS(
      (void)parse("# n=4\n# model=rnn\n# source=exact\ndepth,value,log_value\n0,1\n"),
      std::invalid_argument);  // short row
  CHECK_THROWS_AS(
      (void)parse("# n=4\n# model=rnn\n# source=exact\ndepth,value,log_value\n0,abc,0\n"),
      std::invalid_argument);  // bad number
}
