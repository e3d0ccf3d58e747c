#pragma once

// Massless (m -> 0) and non-relativistic (c -> infinity) limit experiments.
//
// Massless sweep, for each m against the m = 0 run with the same data f:
//   D_pull    = max_t || |xi|^sigma <xi>_m^{s-sigma} u_m(t) - |xi|^s u_0(t) ||
//   D_direct  = max_t || psi_m(t) - psi_0(t) ||_{H^s dot}
//   transfer  = max_t || |xi|^s (R_m^sigma(t) - 1) U_0(t) f ||
// with u = Flow(-t) psi, s = s_d, sigma = sigma_d.
//
// Non-relativistic sweep, for each c against the Schroedinger-limit run:
//   D_nonrel  = max_t || |xi|^sigma (<xi/c>^{1/2} e^{i t c^2 gamma^0} psi_c(t) - psi_inf(t)) ||
//   linear    = max_t || (R~_c^mod(t) - 1) V_inf(t) f ||
// with psi_c(0) = <xi/c>^{-1/2} f and psi_inf(0) = f.
// The max runs over the recorded sample instants.

#include "diraclab/data_profile.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/report.hpp"
#include "diraclab/solver.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace diraclab {

struct MasslessSweepConfig {
  Grid grid = Grid::desk_default(2);
  std::vector<double> masses{0.5, 0.25, 0.125, 0.0625, 0.03125};
  NonlinearityKind nonlinearity = NonlinearityKind::zero;
  DataProfile data;
  double horizon = 1;
  double dt = 1e-3;
  int sample_stride = 10;
  int threads = 1;
};

struct NonrelSweepConfig {
  Grid grid = Grid::desk_default(2);
  std::vector<double> speeds{2, 4, 8, 16};
  NonlinearityKind nonlinearity = NonlinearityKind::zero;
  DataProfile data;
  double horizon = 1;
  double dt = 1e-3;
  int sample_stride = 10;
  /// Steps are refined to at most phase_step / c^2 so the fast e^{2 i c^2 t}
  /// oscillations of the non-resonant terms stay resolved.
  double phase_step = 0.1;
  int threads = 1;
};

/// Default data for each sweep: Pi_+ projected bump in P_[1,4] (massless) and
/// an unprojected bump in P_{<=4} (non-relativistic).
DataProfile massless_default_data();
DataProfile nonrel_default_data();

/// A solver abort inside a sweep, tagged with the sweep parameter.
class SweepAbort : public SolverAbort {
 public:
  SweepAbort(const std::string& parameter, const SolverAbort& inner);
};

ExperimentReport massless_limit_run(const MasslessSweepConfig& cfg);
ExperimentReport nonrel_limit_run(const NonrelSweepConfig& cfg);

struct ScatteringProxy {
  SpinorField final_state;  // u(T) = Flow(-T) psi(T)
  double increment = 0;     // || u(T) - u(T/2) ||
};

/// Requires stored states; u(T/2) is the sample closest to T/2.
ScatteringProxy scattering_proxy(const Trajectory& trajectory);

/// True when the values decrease strictly and the last is at most ratio times the first.
bool monotone_decrease(const std::vector<double>& values, double final_ratio);

}  // namespace diraclab
