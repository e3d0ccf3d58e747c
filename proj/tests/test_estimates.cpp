#include "diraclab/estimates.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace diraclab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Max over all index subsets of sum ||v_{j+1} - v_j||^p, by enumeration.
double brute_force_vp(const PVarPath& path, double p) {
  const int n = static_cast<int>(path.size());
  double best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double sum = 0;
    int prev = -1;
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1u)) continue;
      if (prev >= 0) sum += std::pow((path.values()[j] - path.values()[prev]).norm(), p);
      prev = j;
    }
    best = std::max(best, sum);
  }
  return std::pow(best, 1 / p);
}

PVarPath random_path(std::mt19937_64& rng, int n, int dim) {
  std::normal_distribution<double> g;
  std::vector<double> t;
  std::vector<Eigen::VectorXcd> v;
  double now = 0;
  for (int j = 0; j < n; ++j) {
    now += 0.1 + std::abs(g(rng));
    t.push_back(now);
    Eigen::VectorXcd x(dim);
    for (int k = 0; k < dim; ++k) x(k) = Complex(g(rng), g(rng));
    v.push_back(x);
  }
  return PVarPath(t, v);
}

}  // namespace

TEST_CASE("Strichartz exponents and admissibility") {
  const auto e = strichartz_exponents(2, 6, 6, StrichartzFamily::wave);
  CHECK(e.s == doctest::Approx(0.5));
  CHECK(e.sigma == doctest::Approx(1.0 / 3));
  const auto e3 = strichartz_exponents(3, 4, 4, StrichartzFamily::wave);
  CHECK(e3.s == doctest::Approx(0.5));
  CHECK(e3.sigma == doctest::Approx(0.25));
  const auto energy = strichartz_exponents(2, kInf, 2, StrichartzFamily::wave);
  CHECK(energy.s == 0);
  CHECK(energy.sigma == 0);
  const auto sch = strichartz_exponents(2, 4, 4, StrichartzFamily::schrodinger);
  CHECK(sch.s == doctest::Approx(0.5));
  CHECK(sch.sigma == 0);
  CHECK_THROWS_AS(strichartz_exponents(2, 4, 4, StrichartzFamily::wave), std::invalid_argument);
  CHECK_THROWS_AS(strichartz_exponents(3, 2, kInf, StrichartzFamily::wave), std::invalid_argument);
  CHECK_THROWS_AS(strichartz_exponents(2, 1, 6, StrichartzFamily::wave), std::invalid_argument);
  CHECK_THROWS_AS(strichartz_exponents(2, 6, 6, StrichartzFamily::schrodinger), std::invalid_argument);
}

TEST_CASE("energy pair gives ratio one") {
  StrichartzConfig cfg;
  cfg.grid = Grid(2, 32, 4 * M_PI);
  cfg.q = kInf;
  cfg.r = 2;
  cfg.lambdas = {1, 2, 4};
  cfg.draws = 4;
  cfg.time_samples = 8;
  cfg.m = 0.5;
  const ExperimentReport r = strichartz_sweep(cfg);
  for (double v : r.values("ratio")) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  for (double v : r.values("ratio_random")) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Strichartz ratio is flat in lambda") {
  StrichartzConfig cfg;
  cfg.grid = Grid(2, 64, 4 * M_PI);
  cfg.lambdas = {1, 2, 4, 8};
  cfg.draws = 8;
  cfg.time_samples = 32;
  const ExperimentReport r = strichartz_sweep(cfg);
  CHECK(std::stod(r.meta("flatness")) <= 8);
  cfg.horizon = 100;
  CHECK_THROWS_AS(strichartz_sweep(cfg), std::invalid_argument);
}

TEST_CASE("low-frequency weight keeps the massive ratio bounded") {
  StrichartzConfig cfg;
  cfg.grid = Grid(2, 64, 16 * M_PI);
  cfg.m = 1;
  cfg.lambdas = {0.25, 1, 4};
  cfg.draws = 4;
  cfg.time_samples = 32;
  const ExperimentReport r = strichartz_sweep(cfg);
  const auto w = r.values("ratio"), u = r.values("ratio_unweighted");
  REQUIRE(w.size() == 3);
  // the sigma-weighted bound is smaller at low frequency, so its ratio is the larger one
  CHECK(u[0] < w[0]);
  CHECK(std::stod(r.meta("flatness")) <= 8);
}

TEST_CASE("transversality and bilinear bound") {
  CHECK(transversality(16, 1, 1, 0) == kInf);
  CHECK(transversality(16, 4, 0, 0) == 4);
  CHECK(transversality(4, 4, 0.5, 1) == doctest::Approx(1 + 0.5 * std::sqrt(17.0)));
  CHECK(bilinear_bound(2, 16, 4, 1, 0) == doctest::Approx(2.0));
  CHECK(bilinear_bound(3, 16, 4, 0.5, 0) == doctest::Approx(std::sqrt(2.0) * 2 * std::sqrt(2.0)));
}

TEST_CASE("bilinear sweep skips inadmissible parameters") {
  BilinearConfig cfg;
  cfg.grid = Grid(2, 64, 4 * M_PI);
  cfg.lambda = 8;
  cfg.mus = {1, 2, 8};
  cfg.alphas = {1, 0};
  cfg.draws = 4;
  cfg.time_samples = 16;
  const ExperimentReport r = bilinear_L2_sweep(cfg);
  // alpha = 0 with lambda = mu is parallel and fails the threshold
  CHECK(r.value(8, "skipped[alpha=0]") == 1);
  CHECK(r.values("ratio[alpha=1]").size() == 3);
  CHECK(std::stod(r.meta("flatness")) <= 16);
}

TEST_CASE("null-form gain tracks the angle") {
  NullFormConfig cfg;
  cfg.grid = Grid(2, 64, 4 * M_PI);
  cfg.lambda = cfg.mu = 6;
  cfg.draws = 4;
  cfg.time_samples = 16;
  const ExperimentReport r = null_form_sweep(cfg);
  for (double g : r.values("gain_over_alpha")) {
    CHECK(g >= 0.5);
    CHECK(g <= 2);
  }
}

TEST_CASE("Whitney reconstruction") {
  for (int d : {2, 3}) {
    const Grid g(d, d == 2 ? 64 : 16, 4 * M_PI);
    const int nd = spinor_dimension(d);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n01;
    SpinorField f(g, nd, Repr::frequency), h(g, nd, Repr::frequency);
    for (Eigen::Index i = 0; i < f.coefficients().size(); ++i) {
      f.coefficients().data()[i] = Complex(n01(rng), n01(rng));
      h.coefficients().data()[i] = Complex(n01(rng), n01(rng));
    }
    const WhitneyResult w = whitney_reconstruct(f, h, 4, 2, 0, d == 2 ? 4 : 2);
    CHECK(w.residual <= 1e-12);
    CHECK(w.pairs > 1);
    const WhitneyResult heavy = whitney_reconstruct(f, h, 1, 1, 50, 4);
    CHECK(heavy.finest_level == 0);
    CHECK(heavy.pairs == 1);
    CHECK(heavy.residual <= 1e-12);
  }
  const Grid g(2, 32, 4 * M_PI);
  CHECK_THROWS_AS(whitney_reconstruct(SpinorField(g, 2, Repr::physical), SpinorField(g, 2, Repr::physical), 1, 1, 0),
                  std::invalid_argument);
}

TEST_CASE("p-variation") {
  const PVarPath bump = PVarPath::scalar({0, 1, 0});
  CHECK(vp_seminorm(bump, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(vp_norm(bump, 2) == doctest::Approx(1 + std::sqrt(2.0)));
  const PVarPath mono = PVarPath::scalar({0.5, 0.7, 1.5, 2.0, 4.25});
  CHECK(vp_seminorm(mono, 1) == doctest::Approx(3.75));
  CHECK(vp_seminorm(PVarPath::scalar({3}), 2) == 0);
  CHECK_THROWS_AS(vp_seminorm(bump, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(PVarPath({0, 0}, {Eigen::VectorXcd::Zero(1), Eigen::VectorXcd::Zero(1)}), std::invalid_argument);
  CHECK_THROWS_AS(PVarPath({0, 1}, {Eigen::VectorXcd::Zero(1)}), std::invalid_argument);
  CHECK_THROWS_AS(PVarPath({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(PVarPath({0, 1}, {Eigen::VectorXcd::Zero(1), Eigen::VectorXcd::Zero(2)}), std::invalid_argument);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 12;
    const PVarPath path = random_path(rng, n, 1 + trial % 3);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double dp = vp_seminorm(path, p);
      CHECK(dp == doctest::Approx(brute_force_vp(path, p)).epsilon(1e-12));
      CHECK(vp_seminorm(path, p + 0.5) <= dp * (1 + 1e-12));
    }
    std::vector<Eigen::VectorXcd> scaled;
    for (const auto& v : path.values()) scaled.push_back(2.5 * v);
    CHECK(vp_norm(PVarPath(path.times(), scaled), 2) == doctest::Approx(2.5 * vp_norm(path, 2)).epsilon(1e-12));
  }
}

TEST_CASE("modulation identity") {
  const Eigen::Vector2d xi(1.3, -0.4);
  CHECK(modulation_lhs(xi, xi, 0, +1, +1) == doctest::Approx(0).epsilon(1e-14));
  CHECK(modulation_rhs(xi, xi, 0, +1, +1) == doctest::Approx(0).epsilon(1e-14));
  CHECK(modulation_lhs(xi, -xi, 0, +1, -1) <= 1e-13);
  CHECK(modulation_rhs(xi, -xi, 0, +1, -1) <= 1e-13);
  for (int d : {2, 3}) CHECK(modulation_identity_check(10000, d, 5) <= 1e-10);
}

TEST_CASE("Pi sandwich null structure constant is bounded") {
  for (int d : {2, 3}) {
    const double c = null_structure_constant(5000, d, 6);
    CHECK(std::isfinite(c));
    CHECK(c <= 4);
  }
}
