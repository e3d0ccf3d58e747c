#include "diraclab/limits.hpp"

#include <cmath>

namespace diraclab {

namespace {

// max over samples of || wa * A_i - wb * B_i ||, A and B frequency fields.
double weighted_gap(const Eigen::MatrixXcd& a, const Eigen::VectorXd& wa, const Eigen::MatrixXcd& b,
                    const Eigen::VectorXd& wb) {
  return (wa.asDiagonal() * a - wb.asDiagonal() * b).norm();
}

Eigen::VectorXd weight_vector(const Grid& grid, const SobolevWeight& w) {
  const auto& axi = grid.frequency_norms();
  Eigen::VectorXd out(axi.size());
  for (Eigen::Index p = 0; p < axi.size(); ++p) out(p) = w(axi(p));
  return out;
}

void describe(ExperimentReport& r, const Grid& grid, NonlinearityKind kind, double horizon, double dt,
              double sample_interval) {
  r.set_meta("dim", std::to_string(grid.dim()));
  r.set_meta("n", std::to_string(grid.n()));
  r.set_meta("box_length", grid.box_length());
  r.set_meta("nonlinearity", to_string(kind));
  r.set_meta("horizon", horizon);
  r.set_meta("dt", dt);
  r.set_meta("sample_interval", sample_interval);
  r.set_meta("s", critical_regularity(grid.dim()));
  r.set_meta("sigma", schrodinger_regularity(grid.dim()));
}

std::string describe_data(const DataProfile& d) {
  std::string s = "gaussian bump A=" + format_double(d.amplitude) + " w=" + format_double(d.width) + " xi0=(";
  for (std::size_t i = 0; i < d.center.size(); ++i) s += (i ? " " : "") + format_double(d.center[i]);
  s += ")";
  if (d.projection_sign != 0)
    s += std::string(" Pi") + (d.projection_sign > 0 ? "+" : "-") + "(m=" + format_double(d.projection_mass) + ")";
  if (d.band_hi > 0) s += " P[" + format_double(d.band_lo) + "," + format_double(d.band_hi) + "]";
  if (d.low_pass > 0) s += " P<=" + format_double(d.low_pass);
  if (d.target_norm > 0) s += " norm=" + format_double(d.target_norm);
  return s;
}

NonlinearitySpec make_nonlinearity(NonlinearityKind kind, int dim) {
  switch (kind) {
    case NonlinearityKind::zero:
      return NonlinearitySpec::zero(dim);
    case NonlinearityKind::soler:
      return NonlinearitySpec::soler(dim);
    case NonlinearityKind::thirring:
      return NonlinearitySpec::thirring(dim);
    default:
      throw std::invalid_argument("limit sweeps support the zero, soler and thirring nonlinearities");
  }
}

// Nonlinear runs start from dealiased data so the cubic products stay alias-free.
SpinorField initial_data(const Grid& grid, const GammaRep<double>& rep, const DataProfile& profile,
                         const NonlinearitySpec& nl) {
  SpinorField f = make_data(grid, rep, profile);
  if (nl.is_zero()) return f;
  dealias_cubic_inplace(f);
  return f;
}

// Step count per sample interval so that dt_eff <= dt_max.
int substeps(double sample_interval, double dt_max) {
  return std::max(1, static_cast<int>(std::ceil(sample_interval / dt_max - 1e-9)));
}

Trajectory run(const PropagatorSpec& prop, const NonlinearitySpec& nl, const SpinorField& f, double horizon,
               double sample_interval, int steps_per_sample) {
  const int d = f.grid().dim();
  const EvolutionProblem problem{prop,
                                 nl,
                                 f,
                                 horizon,
                                 sample_interval / steps_per_sample,
                                 steps_per_sample,
                                 {SobolevWeight{critical_regularity(d), schrodinger_regularity(d), 1}}};
  return evolve(problem);
}

template <typename Run>
Trajectory tagged_run(const std::string& tag, Run&& body) {
  try {
    return body();
  } catch (const SolverAbort& e) {
    throw SweepAbort(tag, e);
  }
}

void check_sweep(double horizon, double dt, int stride) {
  if (!(horizon > 0)) throw std::invalid_argument("limit sweep: horizon must be positive");
  if (!(dt > 0) || stride < 1) throw std::invalid_argument("limit sweep: bad dt or sample stride");
  const double samples = horizon / (dt * stride);
  if (std::abs(samples - std::round(samples)) > 1e-9)
    throw std::invalid_argument("limit sweep: horizon must be a multiple of dt * sample_stride");
}

}  // namespace

DataProfile massless_default_data() {
  DataProfile d;
  d.center = {1.5, 0.5, 0};
  d.width = 1.5;
  d.projection_sign = +1;
  d.projection_mass = 0;
  d.band_lo = 1;
  d.band_hi = 4;
  return d;
}

DataProfile nonrel_default_data() {
  DataProfile d;
  d.center = {1, 0.5, 0};
  d.width = 1.5;
  d.projection_sign = 0;
  d.low_pass = 4;
  return d;
}

SweepAbort::SweepAbort(const std::string& parameter, const SolverAbort& inner)
    : SolverAbort(parameter + ": " + inner.what(), inner.time(), inner.norm_history()) {}

bool monotone_decrease(const std::vector<double>& values, double final_ratio) {
  if (values.size() < 2) return false;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) return false;
  return values.back() <= final_ratio * values.front();
}

ScatteringProxy scattering_proxy(const Trajectory& traj) {
  if (traj.states.empty() || traj.states.size() != traj.times.size())
    throw std::invalid_argument("scattering_proxy: trajectory has no stored states");
  const double half = 0.5 * traj.times.back();
  std::size_t best = 0;
  for (std::size_t i = 1; i < traj.times.size(); ++i)
    if (std::abs(traj.times[i] - half) < std::abs(traj.times[best] - half)) best = i;
  ScatteringProxy out{traj.states.back(), 0};
  out.increment = (traj.states.back().coefficients() - traj.states[best].coefficients()).norm();
  return out;
}

ExperimentReport massless_limit_run(const MasslessSweepConfig& cfg) {
  check_sweep(cfg.horizon, cfg.dt, cfg.sample_stride);
  const Grid& grid = cfg.grid;
  const int d = grid.dim();
  const double s = critical_regularity(d), sigma = schrodinger_regularity(d);
  const double interval = cfg.dt * cfg.sample_stride;
  const NonlinearitySpec nl = make_nonlinearity(cfg.nonlinearity, d);
  const GammaRep<double> rep = build_gamma<double>(d);
  const SpinorField f = initial_data(grid, rep, cfg.data, nl);

  const PropagatorSpec prop0 = PropagatorSpec::dirac_mass(d, 0);
  const Trajectory ref = tagged_run("m=0", [&] { return run(prop0, nl, f, cfg.horizon, interval, cfg.sample_stride); });
  const FreeFlow flow0(grid, prop0);
  const Eigen::VectorXd w_hom = weight_vector(grid, SobolevWeight{s, s, 0});
  // psi_0 and U_0(t) f at the samples, in frequency representation
  std::vector<Eigen::MatrixXcd> psi0, free0;
  for (std::size_t i = 0; i < ref.times.size(); ++i) {
    psi0.push_back(flow0.apply(ref.states[i], ref.times[i]).coefficients());
    free0.push_back(flow0.apply(f, ref.times[i]).coefficients());
  }

  const std::size_t count = cfg.masses.size();
  std::vector<double> d_pull(count), d_direct(count), transfer(count), increment(count);
  parallel_for(static_cast<int>(count), cfg.threads, [&](int k) {
    const double m = cfg.masses[k];
    if (m == 0) {
      d_pull[k] = d_direct[k] = transfer[k] = 0;
      increment[k] = scattering_proxy(ref).increment;
      return;
    }
    const PropagatorSpec prop = PropagatorSpec::dirac_mass(d, m);
    const Trajectory tr = tagged_run("m=" + format_double(m),
                                     [&] { return run(prop, nl, f, cfg.horizon, interval, cfg.sample_stride); });
    const FreeFlow flow(grid, prop);
    const Eigen::VectorXd w_mix = weight_vector(grid, SobolevWeight{s, sigma, m});
    double dp = 0, dd = 0, tq = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      const double t = tr.times[i];
      dp = std::max(dp, weighted_gap(tr.states[i].coefficients(), w_mix, ref.states[i].coefficients(), w_hom));
      dd = std::max(dd, weighted_gap(flow.apply(tr.states[i], t).coefficients(), w_hom, psi0[i], w_hom));
      SpinorField g(grid, rep.spinor_dim, Repr::frequency);
      g.coefficients() = free0[i];
      tq = std::max(tq, weighted_gap(transfer_massless(g, rep, m, sigma, t).coefficients(), w_hom, free0[i],
                                     w_hom));
    }
    d_pull[k] = dp;
    d_direct[k] = dd;
    transfer[k] = tq;
    increment[k] = scattering_proxy(tr).increment;
  });

  ExperimentReport report("massless_limit");
  describe(report, grid, cfg.nonlinearity, cfg.horizon, cfg.dt, interval);
  report.set_meta("data", describe_data(cfg.data));
  report.set_meta("sweep", "mass");
  for (std::size_t k = 0; k < count; ++k) {
    report.add(cfg.masses[k], "D_pull", d_pull[k]);
    report.add(cfg.masses[k], "D_direct", d_direct[k]);
    report.add(cfg.masses[k], "transfer_residual", transfer[k]);
    report.add(cfg.masses[k], "scattering_increment", increment[k]);
  }
  for (const char* q : {"D_pull", "D_direct", "transfer_residual"}) {
    try {
      report.fit(q);
    } catch (const std::invalid_argument&) {
      // fewer than two positive points: nothing to fit
    }
  }
  return report;
}

ExperimentReport nonrel_limit_run(const NonrelSweepConfig& cfg) {
  check_sweep(cfg.horizon, cfg.dt, cfg.sample_stride);
  if (!(cfg.phase_step > 0)) throw std::invalid_argument("nonrel sweep: phase_step must be positive");
  const Grid& grid = cfg.grid;
  const int d = grid.dim();
  const double sigma = schrodinger_regularity(d);
  const double interval = cfg.dt * cfg.sample_stride;
  const NonlinearitySpec nl = make_nonlinearity(cfg.nonlinearity, d);
  const GammaRep<double> rep = build_gamma<double>(d);
  const SpinorField f = initial_data(grid, rep, cfg.data, nl);
  for (double c : cfg.speeds)
    if (!(c >= 1)) throw std::invalid_argument("nonrel sweep: speeds must satisfy c >= 1");

  const PropagatorSpec prop_inf = PropagatorSpec::schrodinger(d);
  const Trajectory ref =
      tagged_run("c=inf", [&] { return run(prop_inf, nl, f, cfg.horizon, interval, cfg.sample_stride); });
  const FreeFlow flow_inf(grid, prop_inf);
  std::vector<Eigen::MatrixXcd> psi_inf;
  std::vector<SpinorField> free_inf;
  for (std::size_t i = 0; i < ref.times.size(); ++i) {
    psi_inf.push_back(flow_inf.apply(ref.states[i], ref.times[i]).coefficients());
    free_inf.push_back(flow_inf.apply(f, ref.times[i]));
  }
  const Eigen::VectorXd w_sigma = weight_vector(grid, SobolevWeight{sigma, sigma, 0});
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.points());
  const auto& axi = grid.frequency_norms();

  const std::size_t count = cfg.speeds.size();
  std::vector<double> d_nonrel(count), linear(count), increment(count), dt_used(count);
  parallel_for(static_cast<int>(count), cfg.threads, [&](int k) {
    const double c = cfg.speeds[k];
    const int sub = substeps(interval, std::min(cfg.dt, cfg.phase_step / (c * c)));
    dt_used[k] = interval / sub;
    const PropagatorSpec prop = PropagatorSpec::dirac_speed(d, c);
    const Trajectory tr = tagged_run("c=" + format_double(c), [&] {
      return run(prop, nl, apply_bracket_power(f, c, -0.5), cfg.horizon, interval, sub);
    });
    if (tr.times.size() != ref.times.size())
      throw std::logic_error("nonrel sweep: sample instants do not line up");
    const FreeFlow flow(grid, prop);
    Eigen::VectorXd lift(grid.points());
    for (Eigen::Index p = 0; p < grid.points(); ++p) lift(p) = std::sqrt(japanese_bracket(axi(p) / c, 1.0));
    double dn = 0, lin = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      const double t = tr.times[i];
      SpinorField psi = apply_gamma0_phase(flow.apply(tr.states[i], t), rep, t * c * c);
      dn = std::max(dn, weighted_gap(psi.coefficients(), w_sigma.cwiseProduct(lift), psi_inf[i], w_sigma));
      lin = std::max(lin, weighted_gap(transfer_nonrel_mod(free_inf[i], rep, c, t).coefficients(), ones,
                                       free_inf[i].coefficients(), ones));
    }
    d_nonrel[k] = dn;
    linear[k] = lin;
    increment[k] = scattering_proxy(tr).increment;
  });

  ExperimentReport report("nonrel_limit");
  describe(report, grid, cfg.nonlinearity, cfg.horizon, cfg.dt, interval);
  report.set_meta("data", describe_data(cfg.data));
  report.set_meta("sweep", "speed");
  report.set_meta("phase_step", cfg.phase_step);
  report.set_meta("target", cfg.nonlinearity == NonlinearityKind::zero ? "free Schroedinger flow"
                                                                         : "Schroedinger flow with resonant F_1");
  for (std::size_t k = 0; k < count; ++k) {
    report.add(cfg.speeds[k], "D_nonrel", d_nonrel[k]);
    report.add(cfg.speeds[k], "linear_residual", linear[k]);
    report.add(cfg.speeds[k], "scattering_increment", increment[k]);
    report.add(cfg.speeds[k], "dt_used", dt_used[k]);
  }
  for (const char* q : {"D_nonrel", "linear_residual"}) {
    try {
      report.fit(q);
    } catch (const std::invalid_argument&) {
    }
  }
  return report;
}

}  // namespace diraclab
