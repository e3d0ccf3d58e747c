#pragma once

// Numerical checks of the frequency-localised estimates for free waves:
// Strichartz constants, bilinear L^2 bounds for transversal waves and their
// null-form gain, the angular Whitney decomposition, exact p-variation, the
// modulation identity and the null-structure bound for Pi-sandwiches.
//
// Free scalar waves are e^{+-it<D>_m} f with f supported in a dyadic shell
// (and optionally an angular cap); time integrals run over [0, T_box] with
// T_box = L/2 by default, since every group speed is below 1.

#include "diraclab/multipliers.hpp"
#include "diraclab/report.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace diraclab {

// ---- Strichartz --------------------------------------------------------------

enum class StrichartzFamily { wave, schrodinger };

struct StrichartzExponents {
  double s = 0;
  double sigma = 0;
};

/// Exponents of the bound lambda^sigma <lambda>_m^{s - sigma}. Wave pairs need
/// 1/q + (d-1)/(2r) = (d-1)/4 and give s = (d+1)/((d-1)q), sigma = 2/((d-1)q);
/// Schroedinger pairs need 1/q + d/(2r) = d/4 and give s = (d+2)/(dq), sigma = 0.
/// Throws std::invalid_argument for inadmissible (q, r). q or r may be infinite.
StrichartzExponents strichartz_exponents(int dim, double q, double r, StrichartzFamily family);

struct StrichartzConfig {
  Grid grid{2, 128, 4 * M_PI};
  double m = 0;
  double q = 6;
  double r = 6;
  StrichartzFamily family = StrichartzFamily::wave;
  std::vector<double> lambdas{1, 2, 4, 8, 16};
  int draws = 64;
  int time_samples = 128;  // t_k = T (k/N)^2, k = 0..N
  double horizon = 0;      // 0: T_box
  int sign = +1;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Rows per lambda: ratio (max over candidates of ||wave||_{L^q L^r} / (bound ||f||)),
/// ratio_unweighted (same with the sigma = 0 bound <lambda>_m^s), ratio_random,
/// ratio_flat and ratio_single. Metadata records flatness = max/min of ratio.
ExperimentReport strichartz_sweep(const StrichartzConfig& cfg);

// ---- bilinear L^2 -------------------------------------------------------------

/// lambda/mu + alpha <mu>_m / |m|, infinite for m = 0 and alpha > 0.
double transversality(double lambda, double mu, double alpha, double m);

/// alpha^{-1/2} mu^{1/2} (alpha mu)^{(d-2)/2} (<lambda>_m / lambda)^{1/2}
double bilinear_bound(int dim, double lambda, double mu, double alpha, double m);

struct BilinearConfig {
  Grid grid{2, 128, 4 * M_PI};
  double m = 0;
  double lambda = 16;
  std::vector<double> mus{1, 2, 4};
  std::vector<double> alphas{1, 0.5};
  int sign = +1;  // sign of the second wave
  int draws = 64;
  int time_samples = 128;
  double horizon = 0;
  double threshold = 8;
  std::uint64_t seed = 2;
  int threads = 1;
};

/// Rows with parameter mu and quantity "ratio[alpha=a]"; skipped combinations
/// appear as "skipped[alpha=a]" with the transversality value. Metadata
/// records flatness over the evaluated combinations.
ExperimentReport bilinear_L2_sweep(const BilinearConfig& cfg);

struct NullFormConfig {
  Grid grid{2, 128, 4 * M_PI};
  double m = 0;
  double lambda = 8;
  double mu = 8;
  std::vector<double> alphas{1, 0.5, 0.25};
  int draws = 16;
  int time_samples = 64;
  double horizon = 0;
  std::uint64_t seed = 3;
  int threads = 1;
};

/// Pi_+ projected spinor waves psi, phi in caps at angle alpha. Rows per alpha:
/// null (max ||psi^dagger gamma^0 phi||_{L^2_{t,x}}), plain (max ||psi^dagger phi||),
/// gain = null / plain and gain_over_alpha.
ExperimentReport null_form_sweep(const NullFormConfig& cfg);

// ---- Whitney decomposition ----------------------------------------------------

struct WhitneyResult {
  double residual = 0;  // relative L^2 residual of the pointwise product f^dagger g
  int finest_level = 0;
  int levels = 0;
  int pairs = 0;
};

/// Compares f_lambda^dagger g_mu with the sum over Whitney pairs of
/// f_{lambda,kappa}^dagger g_{mu,kappa~}. f and g in frequency representation.
WhitneyResult whitney_reconstruct(const SpinorField& f, const SpinorField& g, double lambda, double mu,
                                  double m, int max_level = 4);

// ---- p-variation --------------------------------------------------------------

class PVarPath {
 public:
  /// Throws std::invalid_argument unless times are strictly increasing, sizes
  /// match, N >= 1 and all values share one dimension.
  PVarPath(std::vector<double> times, std::vector<Eigen::VectorXcd> values);
  static PVarPath scalar(const std::vector<double>& samples);

  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<Eigen::VectorXcd>& values() const { return values_; }

 private:
  std::vector<double> times_;
  std::vector<Eigen::VectorXcd> values_;
};

/// |v|_{V^p}: sup over subsequences of (sum ||v_{j+1} - v_j||^p)^{1/p}, exact by
/// dynamic programming in O(N^2). Throws std::invalid_argument for p < 1.
double vp_seminorm(const PVarPath& path, double p);
/// max_j ||v_j|| + |v|_{V^p}
double vp_norm(const PVarPath& path, double p);

// ---- symbol identities ----------------------------------------------------------

/// | (s1 <xi>_m - s2 <eta>_m)^2 - <xi - eta>_m^2 |
double modulation_lhs(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta, double m, int s1, int s2);
/// 2 m^2 (|xi| - |eta|)^2 / (<xi><eta> + m^2 + |xi||eta|) + (2 - s1 s2) m^2 + 2 (|xi||eta| - s1 s2 xi.eta)
double modulation_rhs(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta, double m, int s1, int s2);
/// Max of |lhs - rhs| / (<xi>_m^2 + <eta>_m^2) over random samples (m = 0 in a quarter of them).
double modulation_identity_check(int samples, int dim, std::uint64_t seed);

/// Max over random samples of ||Pi_s1(xi)^dagger gamma^0 Pi_s2(eta)||_2 divided by
/// |xi||eta|/(<xi><eta>) angle(s1 xi, s2 eta) + |m|/<xi> + |m|/<eta>.
double null_structure_constant(int samples, int dim, std::uint64_t seed);

}  // namespace diraclab
