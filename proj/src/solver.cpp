#include "diraclab/solver.hpp"

#include <cmath>
#include <sstream>

namespace diraclab {

double box_time_cap(const Grid& grid, const PropagatorSpec& propagator) {
  const FreeFlow flow(grid, propagator);
  return grid.box_length() / (2 * flow.max_group_speed());
}

Stepper::Stepper(const PropagatorSpec& propagator, const NonlinearitySpec& nonlinearity, const Grid& grid)
    : propagator_(propagator), nonlinearity_(nonlinearity), flow_(grid, propagator) {
  if (nonlinearity.rep().dim != grid.dim())
    throw std::invalid_argument("Stepper: nonlinearity dimension does not match the grid");
  use_resonant_ = std::holds_alternative<SchrodingerLimit>(propagator.kind) &&
                  nonlinearity.kind() != NonlinearityKind::soler && !nonlinearity.is_zero();
  keep_.resize(grid.points());
  for (Eigen::Index p = 0; p < grid.points(); ++p) keep_[p] = retained_by_dealias(grid, p) ? 1 : 0;
  const int nd = propagator.rep.spinor_dim;
  i_gamma0_.resize(nd);
  for (int k = 0; k < nd; ++k) i_gamma0_(k) = Complex(0, 1) * propagator.rep.gamma[0](k, k);
}

SpinorField Stepper::rhs(const SpinorField& u, double t) const { return rhs(u, flow_.phases(t)); }

SpinorField Stepper::rhs(const SpinorField& u, const Eigen::VectorXcd& phase) const {
  if (nonlinearity_.is_zero()) return SpinorField(u.grid(), u.components(), Repr::frequency);
  SpinorField psi = u;
  flow_.apply_inplace(psi, phase, false);
  to_physical_inplace(psi);
  SpinorField nl = use_resonant_ ? eval_resonant(nonlinearity_, 1, psi) : eval(nonlinearity_, psi);
  to_frequency_inplace(nl);
  auto& c = nl.coefficients();
  for (Eigen::Index p = 0; p < c.rows(); ++p) {
    if (!keep_[p]) {
      c.row(p).setZero();
      continue;
    }
    for (int k = 0; k < c.cols(); ++k) c(p, k) *= i_gamma0_(k);
  }
  flow_.apply_inplace(nl, phase, true);
  return nl;
}

SpinorField Stepper::step(const SpinorField& u, double t, double h) const {
  if (nonlinearity_.is_zero()) return u;
  const Eigen::VectorXcd p0 = flow_.phases(t), ph = flow_.phases(t + 0.5 * h), p1 = flow_.phases(t + h);
  const SpinorField k1 = rhs(u, p0);
  const SpinorField k2 = rhs(u + Complex(0.5 * h) * k1, ph);
  const SpinorField k3 = rhs(u + Complex(0.5 * h) * k2, ph);
  const SpinorField k4 = rhs(u + Complex(h) * k3, p1);
  SpinorField out = u;
  out.coefficients() += (h / 6.0) * (k1.coefficients() + 2.0 * k2.coefficients() +
                                     2.0 * k3.coefficients() + k4.coefficients());
  return out;
}

SpinorField Stepper::integrate(SpinorField u, double t0, double t1, double dt) const {
  if (!(dt > 0)) throw std::invalid_argument("Stepper::integrate: dt must be positive");
  const long steps = std::max(1L, std::lround(std::ceil(std::abs(t1 - t0) / dt - 1e-9)));
  const double h = (t1 - t0) / steps;
  for (long s = 0; s < steps; ++s) u = step(u, t0 + s * h, h);
  return u;
}

SpinorField Stepper::physical_state(const SpinorField& u, double t) const { return flow_.apply(u, t); }

SpinorField Stepper::pullback(const SpinorField& psi, double t) const {
  const SpinorField f = psi.repr() == Repr::frequency ? psi : to_frequency(psi);
  return flow_.apply(f, -t);
}

SpinorField step(const EvolutionProblem& problem, const SpinorField& u, double t) {
  const Stepper stepper(problem.propagator, problem.nonlinearity, u.grid());
  return stepper.step(u, t, problem.dt);
}

Trajectory evolve(const EvolutionProblem& problem) {
  if (!(problem.dt > 0)) throw std::invalid_argument("evolve: dt must be positive");
  if (!(problem.horizon >= 0)) throw std::invalid_argument("evolve: horizon must be nonnegative");
  if (problem.sample_stride < 1) throw std::invalid_argument("evolve: sample stride must be >= 1");
  const Grid& grid = problem.initial_data.grid();
  if (problem.initial_data.components() != problem.propagator.rep.spinor_dim)
    throw std::invalid_argument("evolve: data has the wrong number of spinor components");
  if (problem.enforce_box_cap) {
    const double cap = box_time_cap(grid, problem.propagator);
    if (problem.horizon > cap * (1 + 1e-12)) {
      std::ostringstream msg;
      msg << "evolve: horizon " << problem.horizon << " exceeds the wrap-around cap T_box = " << cap;
      throw std::invalid_argument(msg.str());
    }
  }
  const Stepper stepper(problem.propagator, problem.nonlinearity, grid);
  SpinorField u = problem.initial_data.repr() == Repr::frequency ? problem.initial_data
                                                                   : to_frequency(problem.initial_data);
  const long steps = std::lround(std::ceil(problem.horizon / problem.dt - 1e-9));
  const double h = steps > 0 ? problem.horizon / steps : 0;

  Trajectory traj{{}, {}, {}, {}, u};
  std::vector<double> monitor;
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.charge.push_back(u.l2_norm());
    std::vector<double> row;
    for (const auto& w : problem.norms) row.push_back(sobolev_norm(u, w));
    monitor.push_back(row.empty() ? traj.charge.back() : row.front());
    traj.norms.push_back(std::move(row));
    if (problem.store_states) traj.states.push_back(u);
    const double now = monitor.back();
    if (!std::isfinite(now) || !std::isfinite(traj.charge.back()))
      throw SolverAbort("solver produced non-finite values at t = " + std::to_string(t), t, monitor);
    if (monitor.front() > 0 && now > problem.blowup_factor * monitor.front())
      throw SolverAbort("norm grew beyond " + std::to_string(problem.blowup_factor) +
                            "x the initial value at t = " + std::to_string(t) +
                            " (outside the small-data regime)",
                        t, monitor);
  };

  record(0);
  for (long s = 0; s < steps; ++s) {
    const double t = s * h;
    u = stepper.step(u, t, h);
    if (!u.coefficients().allFinite())
      throw SolverAbort("solver produced non-finite values at t = " + std::to_string(t + h), t + h, monitor);
    if ((s + 1) % problem.sample_stride == 0 || s + 1 == steps) record(t + h);
  }
  traj.final_state = u;
  return traj;
}

Trajectory evolve_nls(const EvolutionProblem& problem) {
  if (!std::holds_alternative<SchrodingerLimit>(problem.propagator.kind))
    throw std::invalid_argument("evolve_nls: propagator must be the Schroedinger limit");
  return evolve(problem);
}

}  // namespace diraclab
