// diraclab: batch runner for the algebra checks, simulations, limit sweeps and
// estimate verifications. Exit status: 0 all checks pass, 1 a check failed,
// 2 bad configuration, 3 solver abort.

#include "diraclab/config.hpp"
#include "diraclab/estimates.hpp"
#include "diraclab/limits.hpp"
#include "diraclab/multipliers.hpp"
#include "diraclab/nonlinearity.hpp"
#include "diraclab/report.hpp"
#include "diraclab/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace diraclab;

namespace {

struct Options {
  std::string command;
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
};

class Checks {
 public:
  void record(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    failed_ += ok ? 0 : 1;
  }
  int exit_code() const { return failed_ ? 1 : 0; }

 private:
  int failed_ = 0;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Grid read_grid(const Config& cfg) {
  const int n = cfg.get_int("grid.n");
  const int dim = cfg.get_int("grid.dim", 2);
  const double length = cfg.get_double("grid.box_length", Grid::desk_default(dim == 3 ? 3 : 2).box_length());
  try {
    return Grid(dim, n, length);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.line_of("grid.n"), "grid.n", e.what());
  }
}

NonlinearityKind read_kind(const Config& cfg) {
  const std::string k = cfg.get_string("model.nonlinearity", "zero");
  if (k == "zero" || k == "none") return NonlinearityKind::zero;
  if (k == "soler") return NonlinearityKind::soler;
  if (k == "thirring") return NonlinearityKind::thirring;
  throw ConfigError(cfg.line_of("model.nonlinearity"), "model.nonlinearity",
                    "expected zero, soler or thirring, got '" + k + "'");
}

NonlinearitySpec make_spec(NonlinearityKind kind, int dim) {
  switch (kind) {
    case NonlinearityKind::soler:
      return NonlinearitySpec::soler(dim);
    case NonlinearityKind::thirring:
      return NonlinearitySpec::thirring(dim);
    default:
      return NonlinearitySpec::zero(dim);
  }
}

DataProfile read_data(const Config& cfg, DataProfile d) {
  d.amplitude = cfg.get_double("data.amplitude", d.amplitude);
  d.center = cfg.get_doubles("data.center", d.center);
  d.width = cfg.get_double("data.width", d.width);
  d.projection_sign = cfg.get_int("data.projection", d.projection_sign);
  d.projection_mass = cfg.get_double("data.projection_mass", d.projection_mass);
  if (cfg.has("data.band")) {
    const auto band = cfg.get_doubles("data.band");
    if (band.size() != 2) throw ConfigError(cfg.line_of("data.band"), "data.band", "expected two numbers");
    d.band_lo = band[0];
    d.band_hi = band[1];
  }
  d.low_pass = cfg.get_double("data.low_pass", d.low_pass);
  d.target_norm = cfg.get_double("data.norm", d.target_norm);
  return d;
}

void check_slope(Checks& checks, const Config& cfg, const ExperimentReport& report, const std::string& quantity) {
  if (!cfg.has("check.slope")) return;
  const auto band = cfg.get_doubles("check.slope");
  if (band.size() != 2) throw ConfigError(cfg.line_of("check.slope"), "check.slope", "expected two numbers");
  for (const auto& f : report.fits()) {
    if (f.quantity != quantity) continue;
    const bool ok = f.result.slope >= band[0] && f.result.slope <= band[1];
    checks.record(quantity + "_slope", ok,
                  "slope " + fmt(f.result.slope) + " in [" + fmt(band[0]) + ", " + fmt(band[1]) + "]");
    return;
  }
  checks.record(quantity + "_slope", false, "no fit available");
}

void check_monotone(Checks& checks, const Config& cfg, const ExperimentReport& report, const std::string& quantity) {
  if (!cfg.get_bool("check.monotone", false)) return;
  const double ratio = cfg.get_double("check.final_ratio", 0.25);
  auto values = report.values(quantity);
  auto params = report.parameters(quantity);
  // drop a self-comparison entry (m = 0) before judging the trend
  std::vector<double> v;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (params[i] != 0) v.push_back(values[i]);
  const bool ok = monotone_decrease(v, ratio);
  checks.record(quantity + "_monotone", ok,
                v.empty() ? "no values" : "first " + fmt(v.front()) + ", last " + fmt(v.back()));
}

void save(const ExperimentReport& report, const Options& opt, const Config& cfg) {
  report.save(opt.out_dir, cfg.get_bool("output.svg", false));
  std::printf("wrote %s\n", (std::filesystem::path(opt.out_dir) / (report.name() + ".csv")).string().c_str());
}

// ---- commands ------------------------------------------------------------------

int verify_algebra(const Config& cfg, const Options& opt) {
  const double tol = cfg.get_double("algebra.tolerance", 1e-12);
  const int samples = cfg.get_int("algebra.samples", 1000);
  const std::uint64_t seed = opt.seed_given ? opt.seed : cfg.get_u64("run.seed", 1);
  Checks checks;
  ExperimentReport report("algebra");
  report.set_meta("samples", std::to_string(samples));
  report.set_meta("seed", std::to_string(seed));
  for (int d : {2, 3}) {
    const auto rep = build_gamma<double>(d);
    const auto res = algebra_residuals(rep);
    const double gamma5 = std::max(res.gamma5_square, res.gamma5_anticommutes_gamma0);
    const double worst = std::max({res.anticommutator, res.gamma0_hermitian, res.gammaj_antihermitian, gamma5,
                                   res.energy_projection});
    report.add(d, "anticommutator", res.anticommutator);
    report.add(d, "gamma5", gamma5);
    report.add(d, "energy_projection", res.energy_projection);
    checks.record("clifford_d" + std::to_string(d), worst <= tol, "max residual " + fmt(worst));

    std::mt19937_64 rng(seed + d);
    std::normal_distribution<double> normal;
    double proj = 0;
    for (int i = 0; i < samples; ++i) {
      Eigen::VectorXd xi(d);
      for (int j = 0; j < d; ++j) xi(j) = normal(rng);
      const double m = i % 4 == 0 ? 0.0 : std::exp(normal(rng));
      const SpinorMatrix p = projection_matrix(rep, xi, m, +1), q = projection_matrix(rep, xi, m, -1);
      const SpinorMatrix h = hamiltonian_symbol(rep, xi, m);
      const double br = japanese_bracket(xi.norm(), m);
      proj = std::max({proj, (p * p - p).cwiseAbs().maxCoeff(), (p + q - rep.identity()).cwiseAbs().maxCoeff(),
                       (p * q).cwiseAbs().maxCoeff(), (h * p + br * p).cwiseAbs().maxCoeff() / (1 + br)});
    }
    double null = 0;
    const NonlinearitySpec thirring = NonlinearitySpec::thirring(d);
    for (const auto& term : thirring.terms())
      null = std::max({null, null_condition_residual(rep, term.a1), null_condition_residual(rep, term.a2)});
    report.add(d, "projections", proj);
    report.add(d, "null_condition", null);
    checks.record("projections_d" + std::to_string(d), proj <= tol, "max residual " + fmt(proj));
    checks.record("null_condition_d" + std::to_string(d), null <= tol, "max residual " + fmt(null));
    double fierz = 0, recon = 0, oracle = 0;
    const auto pieces = resonant_decompose(NonlinearitySpec::thirring(d));
    const auto soler = resonant_decompose(NonlinearitySpec::soler(d));
    for (int i = 0; i < samples; ++i) {
      Spinor psi(rep.spinor_dim);
      for (int k = 0; k < rep.spinor_dim; ++k) {
        const double re = normal(rng);
        psi(k) = Complex(re, normal(rng));
      }
      const double theta = 2 * M_PI * (i + 0.5) / samples;
      const double scale = std::pow(psi.norm(), 3);
      if (d == 3) fierz = std::max(fierz, fierz_residual(psi, rep));
      const Spinor lhs = eval(NonlinearitySpec::thirring(d), gamma0_phase(rep, psi, theta));
      recon = std::max(recon, (lhs - pieces.reconstruct(rep, psi, theta)).norm() / scale);
      const auto ex = extract_pieces_oracle(NonlinearitySpec::thirring(d), psi);
      const auto exs = extract_pieces_oracle(NonlinearitySpec::soler(d), psi);
      for (int k : kResonantHarmonics) {
        oracle = std::max(oracle, (ex.piece[harmonic_slot(k)] - pieces[k](psi)).norm() / scale);
        oracle = std::max(oracle, (exs.piece[harmonic_slot(k)] - soler[k](psi)).norm() / scale);
      }
    }
    report.add(d, "fierz", fierz);
    report.add(d, "resonant_reconstruction", recon);
    report.add(d, "oracle_agreement", oracle);
    if (d == 3) checks.record("fierz_d3", fierz <= tol, "max residual " + fmt(fierz));
    checks.record("resonant_d" + std::to_string(d), recon <= tol, "reconstruction " + fmt(recon));
    checks.record("oracle_d" + std::to_string(d), oracle <= tol, "piece mismatch " + fmt(oracle));
  }
  save(report, opt, cfg);
  return checks.exit_code();
}

int simulate(const Config& cfg, const Options& opt) {
  const Grid grid = read_grid(cfg);
  const int d = grid.dim();
  const std::string kind = cfg.get_string("model.propagator", "mass");
  PropagatorSpec prop = PropagatorSpec::dirac_mass(d, cfg.get_double("model.m", 1));
  if (kind == "speed")
    prop = PropagatorSpec::dirac_speed(d, cfg.get_double("model.c", 1));
  else if (kind == "schrodinger")
    prop = PropagatorSpec::schrodinger(d);
  else if (kind != "mass")
    throw ConfigError(cfg.line_of("model.propagator"), "model.propagator",
                      "expected mass, speed or schrodinger, got '" + kind + "'");
  const NonlinearitySpec nl = make_spec(read_kind(cfg), d);
  DataProfile data = massless_default_data();
  data.projection_mass = cfg.get_double("model.m", 1);
  data = read_data(cfg, data);
  const double s = critical_regularity(d), sigma = schrodinger_regularity(d);
  const double m_norm = std::holds_alternative<DiracMass>(prop.kind) ? std::get<DiracMass>(prop.kind).m : 1.0;
  EvolutionProblem problem{prop, nl, make_data(grid, prop.rep, data)};
  problem.horizon = cfg.get_double("run.horizon", 1);
  problem.dt = cfg.get_double("run.dt", 1e-3);
  problem.sample_stride = cfg.get_int("run.sample_stride", 10);
  problem.norms = {SobolevWeight{s, sigma, m_norm}};
  problem.blowup_factor = cfg.get_double("run.blowup_factor", 10);
  const Trajectory traj = evolve(problem);

  ExperimentReport report("simulate");
  report.set_meta("dim", std::to_string(d));
  report.set_meta("n", std::to_string(grid.n()));
  report.set_meta("box_length", grid.box_length());
  report.set_meta("propagator", kind);
  report.set_meta("nonlinearity", to_string(nl.kind()));
  report.set_meta("horizon", problem.horizon);
  report.set_meta("dt", problem.dt);
  double drift = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    report.add(traj.times[i], "charge", traj.charge[i]);
    report.add(traj.times[i], "norm_Hs_sigma", traj.norms[i][0]);
    drift = std::max(drift, std::abs(traj.charge[i] - traj.charge[0]) / traj.charge[0]);
  }
  const ScatteringProxy proxy = scattering_proxy(traj);
  report.set_meta("charge_drift", drift);
  report.set_meta("scattering_increment", proxy.increment);
  save(report, opt, cfg);
  if (cfg.get_bool("output.snapshot", false)) {
    std::ofstream snap(std::filesystem::path(opt.out_dir) / "final_state.txt");
    write_snapshot(snap, to_physical(Stepper(prop, nl, grid).physical_state(traj.final_state, problem.horizon)));
  }
  Checks checks;
  const double tol = cfg.get_double("check.charge_drift", 1e-8);
  checks.record("charge_conservation", drift <= tol, "relative drift " + fmt(drift));
  return checks.exit_code();
}

int limit_massless(const Config& cfg, const Options& opt) {
  MasslessSweepConfig sc;
  sc.grid = read_grid(cfg);
  sc.masses = cfg.get_doubles("sweep.masses", sc.masses);
  sc.nonlinearity = read_kind(cfg);
  sc.data = read_data(cfg, massless_default_data());
  sc.horizon = cfg.get_double("run.horizon", sc.horizon);
  sc.dt = cfg.get_double("run.dt", sc.dt);
  sc.sample_stride = cfg.get_int("run.sample_stride", sc.sample_stride);
  sc.threads = opt.threads;
  const ExperimentReport report = massless_limit_run(sc);
  save(report, opt, cfg);
  Checks checks;
  const std::string rate = sc.nonlinearity == NonlinearityKind::zero ? "transfer_residual" : "D_pull";
  check_slope(checks, cfg, report, rate);
  check_monotone(checks, cfg, report, "D_pull");
  return checks.exit_code();
}

int limit_nonrel(const Config& cfg, const Options& opt) {
  NonrelSweepConfig sc;
  sc.grid = read_grid(cfg);
  sc.speeds = cfg.get_doubles("sweep.speeds", sc.speeds);
  sc.nonlinearity = read_kind(cfg);
  sc.data = read_data(cfg, nonrel_default_data());
  sc.horizon = cfg.get_double("run.horizon", sc.horizon);
  sc.dt = cfg.get_double("run.dt", sc.dt);
  sc.sample_stride = cfg.get_int("run.sample_stride", sc.sample_stride);
  sc.phase_step = cfg.get_double("sweep.phase_step", sc.phase_step);
  sc.threads = opt.threads;
  const ExperimentReport report = nonrel_limit_run(sc);
  save(report, opt, cfg);
  Checks checks;
  const std::string rate = sc.nonlinearity == NonlinearityKind::zero ? "linear_residual" : "D_nonrel";
  check_slope(checks, cfg, report, rate);
  check_monotone(checks, cfg, report, "D_nonrel");
  return checks.exit_code();
}

int verify_estimates(const Config& cfg, const Options& opt) {
  const std::uint64_t seed = opt.seed_given ? opt.seed : cfg.get_u64("run.seed", 1);
  const int dim = cfg.get_int("estimates.dim", 2);
  const int n = cfg.get_int("estimates.n", 128);
  const double length = cfg.get_double("estimates.box_length", 4 * M_PI);
  Grid grid(2, 4, 1.0);
  try {
    grid = Grid(dim, n, length);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(cfg.line_of("estimates.n"), "estimates.n", e.what());
  }
  Checks checks;

  if (cfg.get_bool("strichartz.enabled", true)) {
    StrichartzConfig sc;
    sc.grid = grid;
    sc.m = cfg.get_double("strichartz.m", 0);
    sc.q = cfg.get_double("strichartz.q", 6);
    sc.r = cfg.get_double("strichartz.r", 6);
    sc.lambdas = cfg.get_doubles("strichartz.lambdas", sc.lambdas);
    sc.draws = cfg.get_int("strichartz.draws", sc.draws);
    sc.time_samples = cfg.get_int("strichartz.time_samples", sc.time_samples);
    sc.seed = seed;
    sc.threads = opt.threads;
    const auto report = strichartz_sweep(sc);
    save(report, opt, cfg);
    const double flat = std::stod(report.meta("flatness"));
    checks.record("strichartz_flat", flat <= cfg.get_double("strichartz.band", 8), "max/min " + fmt(flat));
  }
  if (cfg.get_bool("bilinear.enabled", true)) {
    BilinearConfig bc;
    bc.grid = grid;
    bc.m = cfg.get_double("bilinear.m", 0);
    bc.lambda = cfg.get_double("bilinear.lambda", bc.lambda);
    bc.mus = cfg.get_doubles("bilinear.mus", bc.mus);
    bc.alphas = cfg.get_doubles("bilinear.alphas", bc.alphas);
    bc.draws = cfg.get_int("bilinear.draws", bc.draws);
    bc.time_samples = cfg.get_int("bilinear.time_samples", bc.time_samples);
    bc.seed = seed + 1;
    bc.threads = opt.threads;
    const auto report = bilinear_L2_sweep(bc);
    save(report, opt, cfg);
    const double flat = std::stod(report.meta("flatness"));
    checks.record("bilinear_flat", flat <= cfg.get_double("bilinear.band", 16), "max/min " + fmt(flat));
  }
  if (cfg.get_bool("nullform.enabled", true)) {
    NullFormConfig nc;
    nc.grid = grid;
    nc.m = cfg.get_double("nullform.m", 0);
    nc.lambda = cfg.get_double("nullform.lambda", nc.lambda);
    nc.mu = cfg.get_double("nullform.mu", nc.mu);
    nc.alphas = cfg.get_doubles("nullform.alphas", nc.alphas);
    nc.draws = cfg.get_int("nullform.draws", nc.draws);
    nc.time_samples = cfg.get_int("nullform.time_samples", nc.time_samples);
    nc.seed = seed + 2;
    nc.threads = opt.threads;
    const auto report = null_form_sweep(nc);
    save(report, opt, cfg);
    bool ok = true;
    std::string detail;
    for (double a : nc.alphas) {
      const double r = report.value(a, "gain_over_alpha");
      ok = ok && r >= 0.5 && r <= 2;
      detail += (detail.empty() ? "" : ", ") + ("gain/alpha(" + fmt(a) + ")=" + fmt(r));
    }
    checks.record("null_form_gain", ok, detail);
  }
  {
    std::mt19937_64 rng(seed + 3);
    std::normal_distribution<double> normal;
    const Grid wg(2, 64, 8 * M_PI);
    SpinorField f(wg, 2, Repr::frequency), g(wg, 2, Repr::frequency);
    for (auto* h : {&f, &g})
      for (Eigen::Index i = 0; i < h->coefficients().size(); ++i) {
        const double re = normal(rng);
        h->coefficients()(i) = Complex(re, normal(rng));
      }
    const double m = cfg.get_double("whitney.m", 0);
    const auto w = whitney_reconstruct(f, g, 4, 2, m, cfg.get_int("whitney.max_level", 4));
    checks.record("whitney", w.residual <= 1e-12,
                  "residual " + fmt(w.residual) + " over " + std::to_string(w.pairs) + " pairs");
  }
  {
    const int samples = cfg.get_int("modulation.samples", 10000);
    double worst = 0;
    for (int d : {2, 3}) worst = std::max(worst, modulation_identity_check(samples, d, seed + 4));
    checks.record("modulation_identity", worst <= 1e-10, "max relative residual " + fmt(worst));
    double c = 0;
    for (int d : {2, 3}) c = std::max(c, null_structure_constant(samples, d, seed + 5));
    checks.record("null_structure", c <= 10, "constant " + fmt(c));
  }
  {
    const auto path = PVarPath::scalar({0, 1, 0});
    const double v = vp_seminorm(path, 2);
    checks.record("vp_example", std::abs(v - std::sqrt(2.0)) <= 1e-15, "|v|_V2 = " + fmt(v));
  }
  return checks.exit_code();
}

int dispatch(const Options& opt) {
  const Config cfg = Config::load(opt.config_path);
  if (opt.command == "verify-algebra") return verify_algebra(cfg, opt);
  if (opt.command == "simulate") return simulate(cfg, opt);
  if (opt.command == "limit-massless") return limit_massless(cfg, opt);
  if (opt.command == "limit-nonrel") return limit_nonrel(cfg, opt);
  return verify_estimates(cfg, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral cubic Dirac simulator and estimate verification lab"};
  app.require_subcommand(1);
  Options opt;
  for (const char* name : {"verify-algebra", "simulate", "limit-massless", "limit-nonrel", "verify-estimates"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "config file (section.key = value lines)")->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "RNG seed (overrides run.seed)");
    sub->add_option("--threads", opt.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->callback([&opt, sub, name] {
      opt.command = name;
      opt.seed_given = sub->count("--seed") > 0;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return dispatch(opt);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const SolverAbort& e) {
    std::fprintf(stderr, "solver abort: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
