#include "diraclab/multipliers.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace diraclab {

namespace {

constexpr std::complex<double> kI(0, 1);

void require_frequency(const SpinorField& f, const char* what) {
  if (f.repr() != Repr::frequency)
    throw std::invalid_argument(std::string(what) + ": field must be in frequency representation");
}

double homogeneous_power(double abs_xi, double exponent) {
  if (exponent == 0) return 1;
  if (abs_xi == 0) return 0;
  return std::pow(abs_xi, exponent);
}

// e^{i omega t} P + e^{-i omega t} (I - P)
SpinorMatrix flow_matrix(const SpinorMatrix& p, double omega, double t) {
  const std::complex<double> ep = std::exp(kI * (omega * t)), em = std::conj(ep);
  return (ep - em) * p + em * SpinorMatrix::Identity(p.rows(), p.cols());
}

}  // namespace

double SobolevWeight::operator()(double abs_xi) const {
  if (m == 0 || sigma == s) return homogeneous_power(abs_xi, s);
  const double br = japanese_bracket(abs_xi, m);
  return homogeneous_power(abs_xi, sigma) * std::pow(br, s - sigma);
}

PropagatorSpec PropagatorSpec::dirac_mass(int dim, double m) {
  return {DiracMass{m}, build_gamma<double>(dim)};
}

PropagatorSpec PropagatorSpec::dirac_speed(int dim, double c) {
  if (!(c >= 1)) throw std::invalid_argument("PropagatorSpec: speed c must satisfy c >= 1");
  return {DiracSpeed{c}, build_gamma<double>(dim)};
}

PropagatorSpec PropagatorSpec::schrodinger(int dim) {
  return {SchrodingerLimit{}, build_gamma<double>(dim)};
}

FreeFlow::FreeFlow(const Grid& grid, const PropagatorSpec& spec)
    : grid_(grid), nd_(spec.rep.spinor_dim) {
  if (spec.rep.dim != grid.dim())
    throw std::invalid_argument("FreeFlow: representation and grid dimensions differ");
  const auto& xi = grid.frequencies();
  const auto& axi = grid.frequency_norms();
  const Eigen::Index np = grid.points();
  omega_.resize(np);
  proj_.resize(np, nd_ * nd_);
  const SpinorMatrix e_minus = energy_projector(spec.rep, -1).matrix;
  for (Eigen::Index p = 0; p < np; ++p) {
    SpinorMatrix proj;
    double speed = 0;
    if (const auto* dm = std::get_if<DiracMass>(&spec.kind)) {
      proj = projection_matrix(spec.rep, xi.row(p).transpose(), dm->m, +1);
      const double br = japanese_bracket(axi(p), dm->m);
      omega_(p) = br;
      speed = br > 0 ? axi(p) / br : 1;
    } else if (const auto* ds = std::get_if<DiracSpeed>(&spec.kind)) {
      proj = projection_matrix(spec.rep, xi.row(p).transpose(), ds->c, +1);
      const double br = japanese_bracket(axi(p), ds->c);
      omega_(p) = ds->c * br;
      speed = ds->c * axi(p) / br;
    } else {
      proj = e_minus;
      omega_(p) = 0.5 * axi(p) * axi(p);
      speed = axi(p);
    }
    if (retained_by_dealias(grid, p)) max_group_speed_ = std::max(max_group_speed_, speed);
    for (int r = 0; r < nd_; ++r)
      for (int c = 0; c < nd_; ++c) proj_(p, r * nd_ + c) = proj(r, c);
  }
}

SpinorMatrix FreeFlow::projection(Eigen::Index p) const {
  SpinorMatrix m(nd_, nd_);
  for (int r = 0; r < nd_; ++r)
    for (int c = 0; c < nd_; ++c) m(r, c) = proj_(p, r * nd_ + c);
  return m;
}

Eigen::VectorXcd FreeFlow::phases(double t) const {
  Eigen::VectorXcd out(omega_.size());
  for (Eigen::Index p = 0; p < omega_.size(); ++p) out(p) = std::polar(1.0, omega_(p) * t);
  return out;
}

void FreeFlow::apply_inplace(SpinorField& f, double t) const { apply_inplace(f, phases(t), false); }

void FreeFlow::apply_inplace(SpinorField& f, const Eigen::VectorXcd& phase, bool inverse) const {
  require_frequency(f, "FreeFlow::apply");
  if (!(f.grid() == grid_) || f.components() != nd_ || phase.size() != omega_.size())
    throw std::invalid_argument("FreeFlow::apply: field does not match the flow grid");
  auto& data = f.coefficients();
  std::complex<double> pf[4];
  for (Eigen::Index p = 0; p < data.rows(); ++p) {
    bool empty = true;
    for (int c = 0; c < nd_ && empty; ++c) empty = data(p, c) == std::complex<double>(0);
    if (empty) continue;  // dealiased fields vanish on most of the lattice
    const std::complex<double> ep = inverse ? std::conj(phase(p)) : phase(p), em = std::conj(ep);
    const std::complex<double>* row = proj_.data() + p * nd_ * nd_;
    for (int r = 0; r < nd_; ++r) {
      std::complex<double> acc = 0;
      for (int c = 0; c < nd_; ++c) acc += row[r * nd_ + c] * data(p, c);
      pf[r] = acc;
    }
    for (int r = 0; r < nd_; ++r) data(p, r) = em * data(p, r) + (ep - em) * pf[r];
  }
}

SpinorField FreeFlow::apply(const SpinorField& f, double t) const {
  SpinorField out = f;
  apply_inplace(out, t);
  return out;
}

SpinorField apply_matrix_symbol(const SpinorField& f,
                                const std::function<SpinorMatrix(Eigen::Index)>& symbol) {
  require_frequency(f, "apply_matrix_symbol");
  SpinorField out = f;
  auto& data = out.coefficients();
  for (Eigen::Index p = 0; p < data.rows(); ++p) {
    const SpinorMatrix m = symbol(p);
    data.row(p) = (m * f.coefficients().row(p).transpose()).transpose();
  }
  return out;
}

SpinorField apply_scalar_symbol(const SpinorField& f,
                                const std::function<std::complex<double>(Eigen::Index)>& symbol) {
  require_frequency(f, "apply_scalar_symbol");
  SpinorField out = f;
  auto& data = out.coefficients();
  for (Eigen::Index p = 0; p < data.rows(); ++p) data.row(p) *= symbol(p);
  return out;
}

SpinorField apply_projection(const SpinorField& f, const ProjectionSymbol& sym,
                             const GammaRep<double>& rep) {
  const auto& xi = f.grid().frequencies();
  return apply_matrix_symbol(f, [&](Eigen::Index p) { return sym(rep, xi.row(p).transpose()); });
}

SpinorField apply_projection(const SpinorField& f, const AdjustedProjectionSymbol& sym,
                             const GammaRep<double>& rep) {
  const auto& xi = f.grid().frequencies();
  return apply_matrix_symbol(f, [&](Eigen::Index p) { return sym(rep, xi.row(p).transpose()); });
}

SpinorField apply_free_flow(const SpinorField& f, const PropagatorSpec& spec, double t) {
  require_frequency(f, "apply_free_flow");
  return FreeFlow(f.grid(), spec).apply(f, t);
}

SpinorField apply_gamma0_phase(const SpinorField& f, const GammaRep<double>& rep, double theta) {
  SpinorField out = f;
  // gamma^0 is diagonal in the Dirac representation.
  for (int c = 0; c < out.components(); ++c)
    out.coefficients().col(c) *= std::exp(kI * (theta * rep.gamma[0](c, c).real()));
  return out;
}

SpinorField apply_bracket_power(const SpinorField& f, double c, double power) {
  const auto& axi = f.grid().frequency_norms();
  return apply_scalar_symbol(
      f, [&](Eigen::Index p) { return std::pow(japanese_bracket(axi(p) / c, 1.0), power); });
}

SpinorField apply_weight(const SpinorField& f, const SobolevWeight& w) {
  const auto& axi = f.grid().frequency_norms();
  return apply_scalar_symbol(f, [&](Eigen::Index p) { return w(axi(p)); });
}

double sobolev_norm(const SpinorField& f, const SobolevWeight& w) {
  const SpinorField g = f.repr() == Repr::frequency ? f : to_frequency(f);
  const auto& axi = g.grid().frequency_norms();
  double sum = 0;
  for (Eigen::Index p = 0; p < g.coefficients().rows(); ++p) {
    const double wp = w(axi(p));
    if (wp != 0) sum += wp * wp * g.coefficients().row(p).squaredNorm();
  }
  return std::sqrt(sum);
}

bool in_dyadic_shell(double abs_xi, double lambda) {
  return abs_xi >= lambda * M_SQRT1_2 && abs_xi < lambda * M_SQRT2;
}

SpinorField littlewood_paley(const SpinorField& f, double lambda) {
  const auto& axi = f.grid().frequency_norms();
  return apply_scalar_symbol(f, [&](Eigen::Index p) { return in_dyadic_shell(axi(p), lambda) ? 1.0 : 0.0; });
}

SpinorField band_project(const SpinorField& f, double lo, double hi) {
  const auto& axi = f.grid().frequency_norms();
  const double a = lo * M_SQRT1_2, b = hi * M_SQRT2;
  return apply_scalar_symbol(f, [&](Eigen::Index p) { return axi(p) >= a && axi(p) < b ? 1.0 : 0.0; });
}

SpinorField low_pass(const SpinorField& f, double lambda) {
  const auto& axi = f.grid().frequency_norms();
  return apply_scalar_symbol(f, [&](Eigen::Index p) { return axi(p) < lambda * M_SQRT2 ? 1.0 : 0.0; });
}

std::vector<double> dyadic_levels(const Grid& grid) {
  const auto& axi = grid.frequency_norms();
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (Eigen::Index p = 0; p < axi.size(); ++p) {
    if (axi(p) == 0) continue;
    lo = std::min(lo, axi(p));
    hi = std::max(hi, axi(p));
  }
  std::vector<double> levels;
  if (hi == 0) return levels;
  const int kmin = static_cast<int>(std::floor(std::log2(lo * M_SQRT2)));
  const int kmax = static_cast<int>(std::ceil(std::log2(hi * M_SQRT2)));
  for (int k = kmin; k <= kmax; ++k) {
    const double lambda = std::ldexp(1.0, k);
    for (Eigen::Index p = 0; p < axi.size(); ++p) {
      if (in_dyadic_shell(axi(p), lambda)) {
        levels.push_back(lambda);
        break;
      }
    }
  }
  return levels;
}

SpinorMatrix transfer_massless_symbol(const GammaRep<double>& rep, const Eigen::VectorXd& xi, double m,
                                      double t) {
  const double axi = xi.norm();
  const SpinorMatrix um = flow_matrix(projection_matrix(rep, xi, m, +1), japanese_bracket(axi, m), t);
  const SpinorMatrix u0 = flow_matrix(projection_matrix(rep, xi, 0.0, +1), axi, -t);
  return um * u0;
}

SpinorField transfer_massless(const SpinorField& f, const GammaRep<double>& rep, double m, double sigma,
                              double t) {
  require_frequency(f, "transfer_massless");
  if (m == 0) return f;
  const double expo = critical_regularity(rep.dim) - sigma;
  const auto& xi = f.grid().frequencies();
  const auto& axi = f.grid().frequency_norms();
  return apply_matrix_symbol(f, [&](Eigen::Index p) {
    const double w = expo == 0 ? 1.0 : std::pow(axi(p) / japanese_bracket(axi(p), m), expo);
    return SpinorMatrix(w * transfer_massless_symbol(rep, xi.row(p).transpose(), m, t));
  });
}

SpinorMatrix transfer_nonrel_symbol(const GammaRep<double>& rep, const Eigen::VectorXd& xi, double c,
                                    double t) {
  const double axi = xi.norm();
  const SpinorMatrix vc =
      flow_matrix(projection_matrix(rep, xi, c, +1), c * japanese_bracket(axi, c), t);
  const SpinorMatrix vinf = flow_matrix(energy_projector(rep, -1).matrix, 0.5 * axi * axi, -t);
  SpinorMatrix phase = SpinorMatrix::Zero(rep.spinor_dim, rep.spinor_dim);
  for (int k = 0; k < rep.spinor_dim; ++k)
    phase(k, k) = std::exp(kI * (t * c * c * rep.gamma[0](k, k).real()));
  const double w = 1.0 / std::sqrt(japanese_bracket(axi / c, 1.0));
  return w * phase * vc * vinf;
}

SpinorField transfer_nonrel_mod(const SpinorField& f, const GammaRep<double>& rep, double c, double t) {
  require_frequency(f, "transfer_nonrel_mod");
  const auto& xi = f.grid().frequencies();
  return apply_matrix_symbol(
      f, [&](Eigen::Index p) { return transfer_nonrel_symbol(rep, xi.row(p).transpose(), c, t); });
}

}  // namespace diraclab
