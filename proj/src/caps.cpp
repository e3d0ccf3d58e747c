#include "diraclab/caps.hpp"

#include "diraclab/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diraclab {

namespace {

int cyclic_distance(int a, int b, int period) {
  const int d = std::abs(a - b) % period;
  return std::min(d, period - d);
}

}  // namespace

CapFamily::CapFamily(int dim, int level) : dim_(dim), level_(level) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("CapFamily: dimension must be 2 or 3");
  if (level < 0 || level > 12) throw std::invalid_argument("CapFamily: level out of range");
  if (dim == 2) {
    bands_ = 1;
    sectors_ = 1 << level;
  } else {
    bands_ = 1 << level;
    sectors_ = level == 0 ? 1 : 1 << (level + 1);
  }
}

double CapFamily::alpha() const { return std::ldexp(1.0, -level_); }

int CapFamily::index_of(const Eigen::Ref<const Eigen::VectorXd>& xi) const {
  const double r = xi.norm();
  if (r == 0) return 0;
  double phi = std::atan2(xi(1), xi(0));
  if (phi < 0) phi += 2 * std::numbers::pi;
  // u in [0, 1); scaling by a power of two keeps the levels exactly nested.
  const double u = std::min(phi / (2 * std::numbers::pi), std::nextafter(1.0, 0.0));
  const int sector = std::min(static_cast<int>(u * sectors_), sectors_ - 1);
  if (dim_ == 2) return sector;
  const double v = std::acos(std::clamp(xi(2) / r, -1.0, 1.0)) / std::numbers::pi;
  const int band = std::min(static_cast<int>(v * bands_), bands_ - 1);
  return band * sectors_ + sector;
}

Eigen::VectorXd CapFamily::center(int k) const {
  const int band = k / sectors_, sector = k % sectors_;
  const double phi = 2 * std::numbers::pi * (sector + 0.5) / sectors_;
  Eigen::VectorXd c(dim_);
  if (dim_ == 2) {
    c << std::cos(phi), std::sin(phi);
  } else {
    const double theta = std::numbers::pi * (band + 0.5) / bands_;
    c << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
  }
  return c;
}

bool CapFamily::near(int a, int b) const {
  const int ba = a / sectors_, bb = b / sectors_;
  if (std::abs(ba - bb) > 1) return false;
  if (cyclic_distance(a % sectors_, b % sectors_, sectors_) <= 1) return true;
  if (dim_ == 2) return false;
  auto polar = [&](int band) { return band == 0 || band == bands_ - 1; };
  return polar(ba) || polar(bb);
}

int CapFamily::parent(int k) const {
  if (level_ == 0) throw std::invalid_argument("CapFamily::parent: level 0 has no parent");
  const CapFamily up(dim_, level_ - 1);
  const int band = k / sectors_, sector = k % sectors_;
  const int pband = dim_ == 2 ? 0 : band / 2;
  const int psector = sector * up.sectors_ / sectors_;
  return pband * up.sectors_ + psector;
}

SpinorField cap_project(const SpinorField& f, const CapFamily& caps, int k, int sign) {
  const auto& xi = f.grid().frequencies();
  const double s = sign > 0 ? 1.0 : -1.0;
  return apply_scalar_symbol(f, [&](Eigen::Index p) {
    const Eigen::VectorXd dir = s * xi.row(p).transpose();
    return caps.index_of(dir) == k ? 1.0 : 0.0;
  });
}

SpinorField lambda_cap_project(const SpinorField& f, double lambda, const CapFamily& caps, int k,
                               const GammaRep<double>& rep, double m) {
  const auto& xi = f.grid().frequencies();
  const auto& axi = f.grid().frequency_norms();
  return apply_matrix_symbol(f, [&](Eigen::Index p) {
    const int nd = rep.spinor_dim;
    if (!in_dyadic_shell(axi(p), lambda)) return SpinorMatrix(SpinorMatrix::Zero(nd, nd));
    const Eigen::VectorXd x = xi.row(p).transpose();
    SpinorMatrix out = SpinorMatrix::Zero(nd, nd);
    if (caps.index_of(x) == k) out += projection_matrix(rep, x, m, +1);
    if (caps.index_of(-x) == k) out += projection_matrix(rep, x, m, -1);
    return out;
  });
}

int whitney_finest_level(double lambda, double mu, double m, int max_level) {
  if (m == 0) return max_level;
  const double lo = std::min(lambda, mu);
  const double ratio = japanese_bracket(lo, m) / std::abs(m);
  const int j = static_cast<int>(std::floor(std::log2(ratio)));
  return std::clamp(j, 0, max_level);
}

std::vector<WhitneyLevel> whitney_pairs(int dim, double lambda, double mu, double m, int max_level) {
  const int finest = whitney_finest_level(lambda, mu, m, max_level);
  std::vector<WhitneyLevel> out;
  CapFamily fam(dim, 0);
  std::vector<std::pair<int, int>> active;
  for (int a = 0; a < fam.count(); ++a)
    for (int b = 0; b < fam.count(); ++b) active.emplace_back(a, b);

  for (int j = 0;; ++j) {
    WhitneyLevel lvl;
    lvl.level = j;
    std::vector<std::pair<int, int>> near_pairs;
    for (const auto& pr : active) {
      if (j == finest || !fam.near(pr.first, pr.second))
        lvl.pairs.push_back(pr);
      else
        near_pairs.push_back(pr);
    }
    out.push_back(std::move(lvl));
    if (j == finest) break;

    const CapFamily next(dim, j + 1);
    std::vector<std::vector<int>> children(fam.count());
    for (int k = 0; k < next.count(); ++k) children[next.parent(k)].push_back(k);
    active.clear();
    for (const auto& pr : near_pairs)
      for (int a : children[pr.first])
        for (int b : children[pr.second]) active.emplace_back(a, b);
    fam = next;
  }
  return out;
}

}  // namespace diraclab
