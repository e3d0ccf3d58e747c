#include "diraclab/config.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/report.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace diraclab;

TEST_CASE("config parsing") {
  const Config c = Config::parse_string(
      "# comment\n"
      "grid.n = 64   # trailing comment\n"
      "\n"
      "sweep.masses = 0.5, 0.25 0.125\n"
      "model.nonlinearity = soler\n"
      "output.svg = true\n"
      "run.seed = 18446744073709551615\n");
  CHECK(c.get_int("grid.n") == 64);
  CHECK(c.line_of("grid.n") == 2);
  CHECK(c.get_doubles("sweep.masses") == std::vector<double>{0.5, 0.25, 0.125});
  CHECK(c.get_string("model.nonlinearity") == "soler");
  CHECK(c.get_bool("output.svg", false));
  CHECK(c.get_u64("run.seed", 0) == 18446744073709551615ull);
  CHECK(c.get_double("grid.box_length", 2.5) == 2.5);
  CHECK(c.has("grid.n"));
  CHECK_FALSE(c.has("grid.dim"));
  CHECK(c.keys("sweep") == std::vector<std::string>{"sweep.masses"});
}

TEST_CASE("config errors name the line and key") {
  auto message = [](const std::string& text, auto&& access) {
    try {
      access(Config::parse_string(text));
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  auto none = [](const Config&) {};
  CHECK(message("grid.n = 1\ngrid.n = 2\n", none) == "config line 2, key 'grid.n': duplicate key");
  CHECK(message("a = 1\n", none).find("section.key") != std::string::npos);
  CHECK(message("just text\n", none).find("line 1") != std::string::npos);
  CHECK(message("grid.dim = 2\n", [](const Config& c) { c.get_int("grid.n"); }) ==
        "config key 'grid.n': missing required key");
  CHECK(message("x.y = 1\nrun.dt = fast\n", [](const Config& c) { c.get_double("run.dt"); })
            .find("config line 2, key 'run.dt'") == 0);
  CHECK(message("grid.n = 6.5\n", [](const Config& c) { c.get_int("grid.n"); }).find("integer") !=
        std::string::npos);
  CHECK(message("a.b = 1, x\n", [](const Config& c) { c.get_doubles("a.b"); }).find("bad list entry") !=
        std::string::npos);
  CHECK(message("a.b = maybe\n", [](const Config& c) { c.get_bool("a.b", true); }).find("boolean") !=
        std::string::npos);
  CHECK_THROWS_AS(Config::load("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("fit_rate on synthetic data") {
  const std::vector<double> m{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> y;
  for (double v : m) y.push_back(3 * v);
  const FitResult a = fit_rate(m, y);
  CHECK(a.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.residual <= 1e-12);
  CHECK(a.intercept == doctest::Approx(std::log(3.0)));
  const std::vector<double> c{2, 4, 8, 16};
  const FitResult b = fit_rate(c, {5 / 2.0, 5 / 4.0, 5 / 8.0, 5 / 16.0});
  CHECK(b.slope == doctest::Approx(-1.0).epsilon(1e-12));
  const FitResult e = fit_rate(c, {1, 0, -2, 0.5});
  CHECK(e.points == 2);
  CHECK(e.excluded == 2);
  CHECK_THROWS_AS(fit_rate(c, {1, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("report CSV layout") {
  ExperimentReport r("demo");
  r.set_meta("grid", "2d");
  r.set_meta("dt", 0.001);
  r.add(0.5, "D", 0.1);
  r.add(0.25, "D", 0.05);
  r.fit("D");
  std::ostringstream csv, fit;
  r.write_csv(csv);
  r.write_fit_csv(fit);
  CHECK(csv.str() ==
        "# grid: 2d\n# dt: 0.001\nparameter,quantity,value\n0.5,D,0.10000000000000001\n0.25,D,0.050000000000000003\n");
  CHECK(fit.str().rfind("quantity,slope,residual,points\nD,", 0) == 0);
  CHECK(r.value(0.25, "D") == 0.05);
  CHECK_THROWS_AS(r.value(1, "D"), std::out_of_range);
  CHECK(format_double(1.0 / 3) == "0.33333333333333331");

  const auto dir = std::filesystem::temp_directory_path() / "diraclab_report_test";
  std::filesystem::remove_all(dir);
  r.save(dir.string(), true);
  CHECK(std::filesystem::exists(dir / "demo.csv"));
  CHECK(std::filesystem::exists(dir / "demo_fit.csv"));
  std::ifstream svg(dir / "demo.svg");
  std::string first;
  std::getline(svg, first);
  CHECK(first.rfind("<svg", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parallel_for runs every index and rethrows the lowest failure") {
  for (int threads : {1, 4}) {
    std::vector<int> seen(100, 0);
    parallel_for(100, threads, [&](int i) { seen[i] += 1; });
    for (int s : seen) CHECK(s == 1);
    std::atomic<int> ran{0};
    try {
      parallel_for(50, threads, [&](int i) {
        ++ran;
        if (i == 7 || i == 31) throw std::runtime_error("task " + std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "task 7");
    }
    CHECK(ran == 50);
  }
}
