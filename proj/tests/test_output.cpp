#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spdc/output.hpp"

using namespace spdc;

namespace {

Curve sample_curve() {
  Curve c;
  c.x_label = "tau_prime";
  c.y_label = "rate";
  c.metadata = {{"experiment", "test"}, {"cfg.beta", "50 fs"}, {"cfg.gamma", "4"}};
  for (int i = 0; i < 7; ++i) {
    const double x = -1.0 + i / 3.0;
    c.samples.push_back({x, std::exp(-x * x) / 3.0});
  }
  return c;
}

std::string csv_of(const Curve& c) {
  std::ostringstream s;
  write_curve_csv(c, s);
  return s.str();
}

}  // namespace

TEST_CASE("two-point curve") {
  Curve c;
  c.x_label = "x";
  c.y_label = "y";
  c.samples = {{0.0, 0.0}, {1.0, 1.0}};
  CHECK(csv_of(c) == "# x=x, y=y\n0,0\n1,1\n");
}

TEST_CASE("csv layout and precision") {
  const std::string text = csv_of(sample_curve());
  CHECK(text.rfind("# x=tau_prime, y=rate\n# experiment = test\n# cfg.beta = 50 fs\n", 0) == 0);
  CHECK(text.find("-0.666666666667,0.213726796143\n") != std::string::npos);
}

TEST_CASE("csv round-trip") {
  const Curve c = sample_curve();
  const Curve back = read_curve_csv(csv_of(c));
  CHECK(back.x_label == c.x_label);
  CHECK(back.y_label == c.y_label);
  CHECK(back.metadata == c.metadata);
  REQUIRE(back.samples.size() == c.samples.size());
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    CHECK(back.samples[i].x == doctest::Approx(c.samples[i].x).epsilon(1e-12));
    CHECK(back.samples[i].y == doctest::Approx(c.samples[i].y).epsilon(1e-12));
  }
  CHECK(csv_of(back) == csv_of(c));
  CHECK(config_text_from_metadata(c) == "beta = 50 fs\ngamma = 4\n");
}

TEST_CASE("malformed csv") {
  CHECK_THROWS_AS(read_curve_csv("0,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(read_curve_csv("# x=a, y=b\n0;1\n"), std::invalid_argument);
  CHECK_THROWS_AS(read_curve_csv("# x=a, y=b\n0,one\n"), std::invalid_argument);
}

TEST_CASE("non-finite curves are refused before writing") {
  Curve c = sample_curve();
  c.samples[3].y = std::nan("");
  std::ostringstream s;
  CHECK_THROWS_AS(write_curve_csv(c, s), std::invalid_argument);
  CHECK(s.str().empty());
  CHECK_THROWS_AS(write_curve_svg(c, s), std::invalid_argument);
  c.samples[3].y = INFINITY;
  CHECK_THROWS_AS(write_curve_csv(c, s), std::invalid_argument);
}

TEST_CASE("files are byte-identical across writes") {
  const auto dir = std::filesystem::temp_directory_path() / "spdc_output_test";
  std::filesystem::create_directories(dir);
  const Curve c = sample_curve();
  write_curve_csv(c, dir / "a.csv");
  write_curve_csv(sample_curve(), dir / "b.csv");
  write_curve_svg(c, dir / "a.svg");
  write_curve_svg(sample_curve(), dir / "b.svg");
  CHECK(read_text_file(dir / "a.csv") == read_text_file(dir / "b.csv"));
  CHECK(read_text_file(dir / "a.svg") == read_text_file(dir / "b.svg"));
  CHECK(read_text_file(dir / "a.csv") == csv_of(c));
  std::filesystem::remove_all(dir);
}

TEST_CASE("io errors carry the path") {
  const Curve c = sample_curve();
  try {
    write_curve_csv(c, std::filesystem::path("/nonexistent-dir/x.csv"));
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(read_text_file("/nonexistent-dir/y.cfg"), IoError);
}

TEST_CASE("svg structure") {
  std::ostringstream s;
  write_curve_svg(sample_curve(), s);
  const std::string svg = s.str();
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>\n") == svg.size() - 7);
  Curve empty;
  CHECK_THROWS_AS(write_curve_svg(empty, s), std::invalid_argument);
}

TEST_CASE("optimization report") {
  OptimizationResult r{3.8317059236, 1.4027593957, 26, 0.0, 10.0};
  std::ostringstream s;
  write_optimization_csv(r, {{"beta_fs", "70"}}, s);
  CHECK(s.str() ==
        "# result=optimize_gamma\n# beta_fs = 70\n"
        "gamma_star,rate_star,iterations,bracket_lo,bracket_hi\n"
        "3.8317059236,1.4027593957,26,0,10\n");
}
