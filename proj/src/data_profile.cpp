#include "diraclab/data_profile.hpp"

#include <stdexcept>

namespace diraclab {

Spinor default_polarization(int spinor_dim) {
  Spinor v(spinor_dim);
  for (int k = 0; k < spinor_dim; ++k) v(k) = Complex(1, 0.5 * k);
  return v / v.norm();
}

SpinorField make_data(const Grid& grid, const GammaRep<double>& rep, const DataProfile& profile) {
  if (!(profile.width > 0)) throw std::invalid_argument("make_data: width must be positive");
  const int d = grid.dim();
  Eigen::VectorXd xi0 = Eigen::VectorXd::Zero(d);
  for (int j = 0; j < d && j < static_cast<int>(profile.center.size()); ++j) xi0(j) = profile.center[j];

  const Spinor v = default_polarization(rep.spinor_dim);
  SpinorField f(grid, rep.spinor_dim, Repr::frequency);
  const auto& xi = grid.frequencies();
  for (Eigen::Index p = 0; p < grid.points(); ++p) {
    const double r2 = (xi.row(p).transpose() - xi0).squaredNorm() / (profile.width * profile.width);
    f.coefficients().row(p) = (profile.amplitude * std::exp(-r2)) * v.transpose();
  }
  if (profile.projection_sign != 0)
    f = apply_projection(f, ProjectionSymbol{profile.projection_sign > 0 ? +1 : -1, profile.projection_mass},
                         rep);
  if (profile.band_hi > 0) f = band_project(f, profile.band_lo, profile.band_hi);
  if (profile.low_pass > 0) f = low_pass(f, profile.low_pass);
  if (profile.target_norm > 0) {
    const SobolevWeight w =
        profile.norm_weight.value_or(SobolevWeight{critical_regularity(d), schrodinger_regularity(d), 1.0});
    const double n = sobolev_norm(f, w);
    if (!(n > 0)) throw std::invalid_argument("make_data: localised data vanishes on this grid");
    f *= Complex(profile.target_norm / n);
  }
  return f;
}

}  // namespace diraclab
