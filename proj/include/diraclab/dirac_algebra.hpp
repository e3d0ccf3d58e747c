#pragma once

// Dirac matrices in the Dirac representation for d = 2 and d = 3, the
// Dirac adjoint, and the energy projections E+- = (I +- gamma^0) / 2.
//
// All matrices are small dense complex matrices (N_d <= 4) with entries in
// {0, +-1, +-i}, so the Clifford identities hold exactly in floating point.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace diraclab {

template <typename Real>
using SpinorMatrixT =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, 4, 4>;
template <typename Real>
using SpinorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
template <typename Real>
using CoSpinorT = Eigen::Matrix<std::complex<Real>, 1, Eigen::Dynamic, Eigen::RowMajor, 1, 4>;

using Complex = std::complex<double>;
using SpinorMatrix = SpinorMatrixT<double>;
using Spinor = SpinorT<double>;
using CoSpinor = CoSpinorT<double>;

/// Number of spinor components for spatial dimension d.
constexpr int spinor_dimension(int dim) { return dim == 2 ? 2 : 4; }

/// Critical regularities s_d = (d-1)/2 (massless) and sigma_d = (d-2)/2 (Schroedinger).
constexpr double critical_regularity(int dim) { return 0.5 * (dim - 1); }
constexpr double schrodinger_regularity(int dim) { return 0.5 * (dim - 2); }

template <typename Real = double>
struct GammaRep {
  int dim = 0;
  int spinor_dim = 0;
  std::vector<SpinorMatrixT<Real>> gamma;  // gamma^0 .. gamma^d
  SpinorMatrixT<Real> gamma5;              // empty unless dim == 3

  /// Minkowski metric eta = diag(+1, -1, ..., -1).
  Real metric(int mu) const { return mu == 0 ? Real(1) : Real(-1); }
  bool has_gamma5() const { return dim == 3; }
  SpinorMatrixT<Real> identity() const {
    return SpinorMatrixT<Real>::Identity(spinor_dim, spinor_dim);
  }
  /// gamma_mu = eta_{mu nu} gamma^nu.
  SpinorMatrixT<Real> lowered(int mu) const { return metric(mu) * gamma[mu]; }
  /// alpha^j = gamma^0 gamma^j, the matrices in the Hamiltonian symbol.
  SpinorMatrixT<Real> alpha(int j) const { return gamma[0] * gamma[j]; }
};

template <typename Real = double>
GammaRep<Real> build_gamma(int dim) {
  using C = std::complex<Real>;
  using M = SpinorMatrixT<Real>;
  const C one(1, 0), im(0, 1), zero(0, 0);

  M s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << zero, one, one, zero;
  s2 << zero, -im, im, zero;
  s3 << one, zero, zero, -one;

  GammaRep<Real> rep;
  rep.dim = dim;
  if (dim == 2) {
    rep.spinor_dim = 2;
    rep.gamma = {s3, im * s2, -im * s1};
  } else if (dim == 3) {
    rep.spinor_dim = 4;
    M g0 = M::Zero(4, 4);
    g0.diagonal() << one, one, -one, -one;
    rep.gamma.push_back(g0);
    for (const M* s : {&s1, &s2, &s3}) {
      M g = M::Zero(4, 4);
      g.topRightCorner(2, 2) = *s;
      g.bottomLeftCorner(2, 2) = -*s;
      rep.gamma.push_back(g);
    }
    rep.gamma5 = im * rep.gamma[0] * rep.gamma[1] * rep.gamma[2] * rep.gamma[3];
  } else {
    throw std::invalid_argument("build_gamma: unsupported spatial dimension " +
                                std::to_string(dim) + " (expected 2 or 3)");
  }
  return rep;
}

/// max over (mu, nu) of |gamma^mu gamma^nu + gamma^nu gamma^mu - 2 eta^{mu nu} I|_max.
template <typename Real>
Real anticommutator_residual(const GammaRep<Real>& rep) {
  Real worst = 0;
  const auto id = rep.identity();
  for (int mu = 0; mu <= rep.dim; ++mu) {
    for (int nu = 0; nu <= rep.dim; ++nu) {
      SpinorMatrixT<Real> r = rep.gamma[mu] * rep.gamma[nu] + rep.gamma[nu] * rep.gamma[mu];
      if (mu == nu) r -= Real(2) * rep.metric(mu) * id;
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

/// psi-bar = psi^dagger gamma^0.
template <typename Real, typename Derived>
CoSpinorT<Real> dirac_adjoint(const Eigen::MatrixBase<Derived>& psi, const GammaRep<Real>& rep) {
  if (psi.size() != rep.spinor_dim)
    throw std::invalid_argument("dirac_adjoint: spinor has " + std::to_string(psi.size()) +
                                " components, representation expects " +
                                std::to_string(rep.spinor_dim));
  return psi.adjoint() * rep.gamma[0];
}

/// psi-bar A phi.
template <typename Real, typename A, typename B, typename M>
std::complex<Real> dirac_bilinear(const Eigen::MatrixBase<A>& psi, const Eigen::MatrixBase<M>& mat,
                                  const Eigen::MatrixBase<B>& phi, const GammaRep<Real>& rep) {
  return (dirac_adjoint(psi, rep) * mat * phi)(0, 0);
}

template <typename Real = double>
struct EnergyProjector {
  int sign = +1;
  SpinorMatrixT<Real> matrix;
};

/// E+- = (I +- gamma^0) / 2.
template <typename Real>
EnergyProjector<Real> energy_projector(const GammaRep<Real>& rep, int sign) {
  return {sign, Real(0.5) * (rep.identity() + Real(sign > 0 ? 1 : -1) * rep.gamma[0])};
}

/// max_j |gamma^0 gamma^j A - A gamma^0 gamma^j|_max; zero iff A satisfies the
/// commutativity (null) condition.
template <typename Real, typename Derived>
Real null_condition_residual(const GammaRep<Real>& rep, const Eigen::MatrixBase<Derived>& a) {
  Real worst = 0;
  for (int j = 1; j <= rep.dim; ++j) {
    const SpinorMatrixT<Real> al = rep.alpha(j);
    worst = std::max(worst, (al * a - a * al).cwiseAbs().maxCoeff());
  }
  return worst;
}

/// Exact residuals of the structural identities of a representation; the
/// gamma5 entries are zero for d = 2.
template <typename Real>
struct AlgebraResiduals {
  Real anticommutator = 0;
  Real gamma0_hermitian = 0;
  Real gammaj_antihermitian = 0;
  Real gamma5_square = 0;
  Real gamma5_anticommutes_gamma0 = 0;
  Real energy_projection = 0;  // E^2 = E, E+ + E- = I, E gamma0 = +-E, gamma5 E+ = E- gamma5
};

template <typename Real>
AlgebraResiduals<Real> algebra_residuals(const GammaRep<Real>& rep) {
  AlgebraResiduals<Real> r;
  auto maxabs = [](const SpinorMatrixT<Real>& m) { return m.cwiseAbs().maxCoeff(); };
  r.anticommutator = anticommutator_residual(rep);
  r.gamma0_hermitian = maxabs(rep.gamma[0].adjoint() - rep.gamma[0]);
  for (int j = 1; j <= rep.dim; ++j)
    r.gammaj_antihermitian = std::max(r.gammaj_antihermitian, maxabs(rep.gamma[j].adjoint() + rep.gamma[j]));
  const auto ep = energy_projector(rep, +1).matrix;
  const auto em = energy_projector(rep, -1).matrix;
  const auto id = rep.identity();
  r.energy_projection = std::max({maxabs(ep * ep - ep), maxabs(em * em - em), maxabs(ep + em - id),
                                  maxabs(ep * rep.gamma[0] - ep), maxabs(em * rep.gamma[0] + em)});
  if (rep.has_gamma5()) {
    r.gamma5_square = maxabs(rep.gamma5 * rep.gamma5 - id);
    r.gamma5_anticommutes_gamma0 = maxabs(rep.gamma[0] * rep.gamma5 + rep.gamma5 * rep.gamma[0]);
    r.energy_projection = std::max(r.energy_projection, maxabs(rep.gamma5 * ep - em * rep.gamma5));
  }
  return r;
}

}  // namespace diraclab
