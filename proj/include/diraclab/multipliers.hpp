#pragma once

// Fourier multipliers acting on spinor fields: the energy projections Pi+-,
// the free propagators for the massive Dirac equation, the speed-c Dirac
// equation and its Schroedinger limit, Sobolev weights, Littlewood-Paley
// shells and the transfer operators comparing two linear flows.

#include "diraclab/dirac_algebra.hpp"
#include "diraclab/spectral_field.hpp"

#include <cmath>
#include <functional>
#include <variant>
#include <vector>

namespace diraclab {

/// <xi>_m = (m^2 + |xi|^2)^{1/2}
template <typename Real>
Real japanese_bracket(Real norm, Real m) {
  return std::sqrt(m * m + norm * norm);
}

/// angle(xi, eta) = (1 - xi.eta / (|xi||eta|))^{1/2}; zero if either vector vanishes.
template <typename A, typename B>
double angle(const Eigen::MatrixBase<A>& xi, const Eigen::MatrixBase<B>& eta) {
  const double nx = xi.norm(), ny = eta.norm();
  if (nx == 0 || ny == 0) return 0;
  const double c = xi.dot(eta) / (nx * ny);
  return std::sqrt(std::max(0.0, 1.0 - c));
}

/// gamma^0 (gamma^j xi_j + m), the symbol of the free Dirac Hamiltonian.
template <typename Real, typename Derived>
SpinorMatrixT<Real> hamiltonian_symbol(const GammaRep<Real>& rep, const Eigen::MatrixBase<Derived>& xi,
                                       Real m) {
  SpinorMatrixT<Real> h = m * rep.gamma[0];
  for (int j = 1; j <= rep.dim; ++j) h += Real(xi(j - 1)) * rep.alpha(j);
  return h;
}

/// Pi_+-(xi) = (I -+ gamma^0 (gamma^j xi_j + m) / <xi>_m) / 2. At xi = 0 with
/// m = 0 the symbol is undefined and I/2 is returned.
template <typename Real, typename Derived>
SpinorMatrixT<Real> projection_matrix(const GammaRep<Real>& rep, const Eigen::MatrixBase<Derived>& xi,
                                      Real m, int sign) {
  const Real br = japanese_bracket<Real>(Real(xi.norm()), m);
  SpinorMatrixT<Real> id = rep.identity();
  if (br == 0) return Real(0.5) * id;
  const Real s = sign > 0 ? Real(-1) : Real(1);
  return Real(0.5) * (id + (s / br) * hamiltonian_symbol(rep, xi, m));
}

struct ProjectionSymbol {
  int sign = +1;
  double m = 0;

  template <typename Derived>
  SpinorMatrix operator()(const GammaRep<double>& rep, const Eigen::MatrixBase<Derived>& xi) const {
    return projection_matrix(rep, xi, m, sign);
  }
};

/// Pi~_{c,+-}: the projections of the speed-c Hamiltonian, i.e. Pi_+- with mass c.
struct AdjustedProjectionSymbol {
  int sign = +1;
  double c = 1;

  template <typename Derived>
  SpinorMatrix operator()(const GammaRep<double>& rep, const Eigen::MatrixBase<Derived>& xi) const {
    return projection_matrix(rep, xi, c, sign);
  }
};

/// |xi|^sigma <xi>_m^{s - sigma}. Negative homogeneous exponents send xi = 0 to 0.
struct SobolevWeight {
  double s = 0;
  double sigma = 0;
  double m = 0;

  double operator()(double abs_xi) const;
};

struct DiracMass {
  double m = 0;
};
struct DiracSpeed {
  double c = 1;
};
struct SchrodingerLimit {};

struct PropagatorSpec {
  std::variant<DiracMass, DiracSpeed, SchrodingerLimit> kind;
  GammaRep<double> rep;

  static PropagatorSpec dirac_mass(int dim, double m);
  /// Throws std::invalid_argument unless c >= 1.
  static PropagatorSpec dirac_speed(int dim, double c);
  static PropagatorSpec schrodinger(int dim);
};

/// Precomputed free flow on a grid. Every propagator has the form
///   Flow(t) = e^{i omega t} P + e^{-i omega t} (I - P)
/// with a projection P and a frequency omega at each lattice point.
class FreeFlow {
 public:
  FreeFlow(const Grid& grid, const PropagatorSpec& spec);

  const Grid& grid() const { return grid_; }
  int spinor_dim() const { return nd_; }
  const Eigen::VectorXd& omega() const { return omega_; }
  /// Projection P at lattice point p.
  SpinorMatrix projection(Eigen::Index p) const;

  SpinorField apply(const SpinorField& f, double t) const;
  void apply_inplace(SpinorField& f, double t) const;
  /// e^{i omega t} at every lattice point.
  Eigen::VectorXcd phases(double t) const;
  /// Flow(t) with phases(t) precomputed; inverse = true gives Flow(-t).
  void apply_inplace(SpinorField& f, const Eigen::VectorXcd& phase, bool inverse) const;
  /// Largest group speed |d omega / d xi| over the modes kept by the cubic
  /// dealiasing; sets the wrap-around cap.
  double max_group_speed() const { return max_group_speed_; }

 private:
  Grid grid_;
  int nd_;
  Eigen::VectorXd omega_;
  Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> proj_;  // row p: P(xi_p) flattened
  double max_group_speed_ = 0;
};

/// Applies a pointwise matrix symbol p -> M(xi_p). Frequency representation only.
SpinorField apply_matrix_symbol(const SpinorField& f,
                                const std::function<SpinorMatrix(Eigen::Index)>& symbol);
/// Applies a pointwise scalar symbol p -> w(xi_p). Frequency representation only.
SpinorField apply_scalar_symbol(const SpinorField& f,
                                const std::function<std::complex<double>(Eigen::Index)>& symbol);

SpinorField apply_projection(const SpinorField& f, const ProjectionSymbol& sym,
                             const GammaRep<double>& rep);
SpinorField apply_projection(const SpinorField& f, const AdjustedProjectionSymbol& sym,
                             const GammaRep<double>& rep);
SpinorField apply_free_flow(const SpinorField& f, const PropagatorSpec& spec, double t);

/// e^{i theta gamma^0} acting pointwise (any representation).
SpinorField apply_gamma0_phase(const SpinorField& f, const GammaRep<double>& rep, double theta);
/// <xi / c>^power.
SpinorField apply_bracket_power(const SpinorField& f, double c, double power);
/// Multiplies by the weight of w.
SpinorField apply_weight(const SpinorField& f, const SobolevWeight& w);

/// || w(xi) fhat(xi) ||_{l^2}; physical fields are transformed internally.
double sobolev_norm(const SpinorField& f, const SobolevWeight& w);

/// Sharp dyadic shell {lambda / sqrt2 <= |xi| < sqrt2 lambda}.
bool in_dyadic_shell(double abs_xi, double lambda);
SpinorField littlewood_paley(const SpinorField& f, double lambda);
/// Sum of P_lambda over dyadic lambda in [lo, hi].
SpinorField band_project(const SpinorField& f, double lo, double hi);
/// P_{<= lambda}: all modes with |xi| < sqrt2 lambda, including xi = 0.
SpinorField low_pass(const SpinorField& f, double lambda);
/// Dyadic lambda = 2^k whose shells contain at least one lattice point.
std::vector<double> dyadic_levels(const Grid& grid);

/// R_m^sigma(t) = (|xi| / <xi>_m)^{s_d - sigma} U_m(t) U_0(-t); exactly the identity for m = 0.
SpinorField transfer_massless(const SpinorField& f, const GammaRep<double>& rep, double m, double sigma,
                              double t);
/// Symbol of U_m(t) U_0(-t) without the weight, evaluated at one frequency.
SpinorMatrix transfer_massless_symbol(const GammaRep<double>& rep, const Eigen::VectorXd& xi, double m,
                                      double t);
/// R~_c^mod(t) = e^{i t c^2 gamma^0} <xi/c>^{-1/2} V_c(t) V_inf(-t).
SpinorField transfer_nonrel_mod(const SpinorField& f, const GammaRep<double>& rep, double c, double t);
SpinorMatrix transfer_nonrel_symbol(const GammaRep<double>& rep, const Eigen::VectorXd& xi, double c,
                                    double t);

}  // namespace diraclab
