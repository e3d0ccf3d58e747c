#pragma once

// Interaction-picture RK4 (Lawson) integrator for
//   psi' = -i H psi + i gamma^0 F(psi)
// where H is the Hamiltonian of the chosen free flow. With u = Flow(-t) psi,
//   u' = i Flow(-t) D[gamma^0 F(Flow(t) u)],
// D the cubic dealiasing projection. The linear part is exact; for the
// Schroedinger limit the resonant piece F_1 replaces F.

#include "diraclab/multipliers.hpp"
#include "diraclab/nonlinearity.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diraclab {

class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, double time, std::vector<double> norm_history)
      : std::runtime_error(what), time_(time), history_(std::move(norm_history)) {}
  double time() const { return time_; }
  const std::vector<double>& norm_history() const { return history_; }

 private:
  double time_;
  std::vector<double> history_;
};

struct EvolutionProblem {
  PropagatorSpec propagator;
  NonlinearitySpec nonlinearity;
  SpinorField initial_data;
  double horizon = 1;
  double dt = 1e-3;
  int sample_stride = 10;
  /// Norms recorded at each sample; the first one is also the blow-up monitor.
  std::vector<SobolevWeight> norms;
  bool store_states = true;
  bool enforce_box_cap = true;
  double blowup_factor = 10;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpinorField> states;  // u(t) in frequency representation (when stored)
  std::vector<double> charge;       // ||psi(t)||_{L^2}
  std::vector<std::vector<double>> norms;
  SpinorField final_state;          // u(horizon), always kept
};

/// T_box = L / (2 * max group speed of the flow).
double box_time_cap(const Grid& grid, const PropagatorSpec& propagator);

/// Reusable integrator for one problem.
class Stepper {
 public:
  Stepper(const PropagatorSpec& propagator, const NonlinearitySpec& nonlinearity, const Grid& grid);

  const FreeFlow& flow() const { return flow_; }
  bool linear() const { return nonlinearity_.is_zero(); }

  /// u'(t)
  SpinorField rhs(const SpinorField& u, double t) const;
  /// u'(t) with phase = flow().phases(t) precomputed.
  SpinorField rhs(const SpinorField& u, const Eigen::VectorXcd& phase) const;
  /// One classical RK4 step of signed size h from time t.
  SpinorField step(const SpinorField& u, double t, double h) const;
  /// Steps from t0 to t1 with |h| <= dt (equal steps).
  SpinorField integrate(SpinorField u, double t0, double t1, double dt) const;

  /// psi(t) = Flow(t) u
  SpinorField physical_state(const SpinorField& u, double t) const;
  /// u = Flow(-t) psi
  SpinorField pullback(const SpinorField& psi, double t) const;

 private:
  PropagatorSpec propagator_;
  NonlinearitySpec nonlinearity_;
  FreeFlow flow_;
  bool use_resonant_ = false;
  std::vector<char> keep_;
  Eigen::VectorXcd i_gamma0_;
};

/// One RK4 step of problem.dt from time t (builds a Stepper; use Stepper directly in loops).
SpinorField step(const EvolutionProblem& problem, const SpinorField& u, double t);
/// Throws std::invalid_argument when horizon exceeds T_box (if enforced) or dt <= 0;
/// SolverAbort on non-finite values or norm growth beyond blowup_factor.
Trajectory evolve(const EvolutionProblem& problem);
/// As evolve, requiring a SchrodingerLimit propagator.
Trajectory evolve_nls(const EvolutionProblem& problem);

}  // namespace diraclab
