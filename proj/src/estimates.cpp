#include "diraclab/estimates.hpp"

#include "diraclab/caps.hpp"
#include "diraclab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace diraclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inverse(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

// Nodes t_k = T (k/N)^2 and trapezoid weights.
struct TimeGrid {
  std::vector<double> t;
  std::vector<double> w;
};

TimeGrid quadratic_time_grid(double horizon, int samples) {
  if (samples < 1) throw std::invalid_argument("time_samples must be >= 1");
  TimeGrid g;
  for (int k = 0; k <= samples; ++k) {
    const double u = static_cast<double>(k) / samples;
    g.t.push_back(horizon * u * u);
  }
  g.w.assign(g.t.size(), 0.0);
  for (int k = 0; k < samples; ++k) {
    const double h = g.t[k + 1] - g.t[k];
    g.w[k] += 0.5 * h;
    g.w[k + 1] += 0.5 * h;
  }
  return g;
}

double window(const Grid& grid, double horizon) { return horizon > 0 ? horizon : 0.5 * grid.box_length(); }

// Frequency support of a localised wave.
struct Support {
  std::vector<Eigen::Index> modes;
  Eigen::VectorXd omega;  // <xi>_m at each mode
};

Support shell_support(const Grid& grid, double lambda, double m, const Eigen::VectorXd* cap_center,
                      double cap_halfwidth) {
  Support s;
  const auto& xi = grid.frequencies();
  const auto& axi = grid.frequency_norms();
  for (Eigen::Index p = 0; p < grid.points(); ++p) {
    if (!in_dyadic_shell(axi(p), lambda)) continue;
    if (cap_center) {
      const double c = std::clamp(xi.row(p).dot(*cap_center) / axi(p), -1.0, 1.0);
      if (std::acos(c) > cap_halfwidth) continue;
    }
    s.modes.push_back(p);
  }
  s.omega.resize(static_cast<Eigen::Index>(s.modes.size()));
  for (std::size_t i = 0; i < s.modes.size(); ++i) s.omega(i) = japanese_bracket(axi(s.modes[i]), m);
  return s;
}

// Candidate coefficient sets: `draws` complex Gaussian draws, then the flat
// spectrum, then a single mode (the one closest to `target`, or the first).
std::vector<Eigen::MatrixXcd> candidates(const Grid& grid, const Support& s, int components, int draws,
                                         std::mt19937_64& rng, const Eigen::VectorXd* target) {
  const Eigen::Index n = static_cast<Eigen::Index>(s.modes.size());
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXcd> out;
  for (int k = 0; k < draws; ++k) {
    Eigen::MatrixXcd a(n, components);
    for (Eigen::Index i = 0; i < n; ++i)
      for (int c = 0; c < components; ++c) {
        const double re = normal(rng);
        a(i, c) = Complex(re, normal(rng));
      }
    out.push_back(a);
  }
  out.push_back(Eigen::MatrixXcd::Ones(n, components));
  Eigen::Index best = 0;
  if (target) {
    const auto& xi = grid.frequencies();
    double dist = kInf;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double dd = (xi.row(s.modes[i]).transpose() - *target).norm();
      if (dd < dist) dist = dd, best = i;
    }
  }
  Eigen::MatrixXcd single = Eigen::MatrixXcd::Zero(n, components);
  single.row(best).setOnes();
  out.push_back(single);
  return out;
}

// Physical samples of sum_i a_i e^{i (xi_i x + sign t omega_i)}, one column per component.
Eigen::MatrixXcd wave_at(const Grid& grid, const Support& s, const Eigen::MatrixXcd& a, int sign, double t) {
  SpinorField f(grid, static_cast<int>(a.cols()), Repr::frequency);
  for (std::size_t i = 0; i < s.modes.size(); ++i) {
    const Complex ph = std::exp(Complex(0, sign * t * s.omega(i)));
    f.coefficients().row(s.modes[i]) = ph * a.row(i);
  }
  to_physical_inplace(f);
  return std::move(f.coefficients());
}

double lr_norm(const Grid& grid, const Eigen::VectorXcd& u, double r) {
  if (std::isinf(r)) return u.cwiseAbs().maxCoeff();
  if (r == 2) return std::sqrt(grid.cell_volume()) * u.norm();
  double acc = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) acc += std::pow(std::abs(u(i)), r);
  return std::pow(grid.cell_volume() * acc, 1.0 / r);
}

double lq_time(const TimeGrid& tg, const std::vector<double>& values, double q) {
  if (std::isinf(q)) return *std::max_element(values.begin(), values.end());
  double acc = 0;
  for (std::size_t k = 0; k < values.size(); ++k) acc += tg.w[k] * std::pow(values[k], q);
  return std::pow(acc, 1.0 / q);
}

std::string alpha_tag(const std::string& name, double alpha) { return name + "[alpha=" + format_double(alpha) + "]"; }

Eigen::VectorXd direction(int dim, double phi) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  e(0) = std::cos(phi);
  e(1) = std::sin(phi);
  return e;
}

// Angle between cap centres whose |.|-angle (1 - cos)^{1/2} equals alpha.
double separation_angle(double alpha) { return 2 * std::asin(std::min(1.0, alpha / std::sqrt(2.0))); }

double flatness(const std::vector<double>& v) {
  if (v.empty()) return 0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

}  // namespace

// ---- Strichartz ----------------------------------------------------------------

StrichartzExponents strichartz_exponents(int dim, double q, double r, StrichartzFamily family) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("strichartz: dimension must be 2 or 3");
  if (!(q >= 2) || !(r >= 2)) throw std::invalid_argument("strichartz: need q, r >= 2");
  const double iq = inverse(q), ir = inverse(r);
  const double d = dim;
  if (family == StrichartzFamily::wave) {
    if (std::abs(iq + 0.5 * (d - 1) * ir - 0.25 * (d - 1)) > 1e-12)
      throw std::invalid_argument("strichartz: (q, r) is not wave admissible");
    if (dim == 3 && q == 2) throw std::invalid_argument("strichartz: endpoint (2, inf) excluded in d = 3");
    return {(d + 1) / (d - 1) * iq, 2 / (d - 1) * iq};
  }
  if (std::abs(iq + 0.5 * d * ir - 0.25 * d) > 1e-12)
    throw std::invalid_argument("strichartz: (q, r) is not Schroedinger admissible");
  return {(d + 2) / d * iq, 0};
}

ExperimentReport strichartz_sweep(const StrichartzConfig& cfg) {
  const Grid& grid = cfg.grid;
  const StrichartzExponents ex = strichartz_exponents(grid.dim(), cfg.q, cfg.r, cfg.family);
  if (cfg.family == StrichartzFamily::schrodinger && cfg.m == 0)
    throw std::invalid_argument("strichartz: the Schroedinger-admissible bound needs m != 0");
  if (cfg.draws < 0) throw std::invalid_argument("strichartz: draws must be >= 0");
  const double horizon = window(grid, cfg.horizon);
  if (horizon > 0.5 * grid.box_length() * (1 + 1e-12))
    throw std::invalid_argument("strichartz: time window exceeds T_box");
  const TimeGrid tg = quadratic_time_grid(horizon, cfg.time_samples);

  ExperimentReport report("strichartz");
  report.set_meta("dim", std::to_string(grid.dim()));
  report.set_meta("n", std::to_string(grid.n()));
  report.set_meta("box_length", grid.box_length());
  report.set_meta("m", cfg.m);
  report.set_meta("q", cfg.q);
  report.set_meta("r", cfg.r);
  report.set_meta("family", cfg.family == StrichartzFamily::wave ? "wave" : "schroedinger");
  report.set_meta("s", ex.s);
  report.set_meta("sigma", ex.sigma);
  report.set_meta("horizon", horizon);
  report.set_meta("draws", std::to_string(cfg.draws));
  report.set_meta("time_samples", std::to_string(cfg.time_samples));
  report.set_meta("seed", std::to_string(cfg.seed));

  std::vector<double> flat_ratios;
  for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
    const double lambda = cfg.lambdas[li];
    const Support s = shell_support(grid, lambda, cfg.m, nullptr, 0);
    if (s.modes.empty()) {
      report.add(lambda, "skipped_empty_shell", 1);
      continue;
    }
    std::mt19937_64 rng(cfg.seed + 7919 * li);
    const auto cands = candidates(grid, s, 1, cfg.draws, rng, nullptr);
    std::vector<double> ratio(cands.size());
    parallel_for(static_cast<int>(cands.size()), cfg.threads, [&](int k) {
      std::vector<double> lr(tg.t.size());
      for (std::size_t j = 0; j < tg.t.size(); ++j)
        lr[j] = lr_norm(grid, wave_at(grid, s, cands[k], cfg.sign, tg.t[j]).col(0), cfg.r);
      ratio[k] = lq_time(tg, lr, cfg.q) / cands[k].norm();
    });
    const double br = japanese_bracket(lambda, cfg.m);
    double bound, unweighted;
    if (cfg.family == StrichartzFamily::wave) {
      bound = std::pow(lambda, ex.sigma) * std::pow(br, ex.s - ex.sigma);
      unweighted = std::pow(br, ex.s);
    } else {
      bound = std::pow(std::abs(cfg.m), -2.0 / (grid.dim() * cfg.q)) * std::pow(br, ex.s);
      unweighted = bound;
    }
    const double random_max =
        cfg.draws > 0 ? *std::max_element(ratio.begin(), ratio.begin() + cfg.draws) : 0.0;
    const double flat = ratio[cfg.draws], single = ratio[cfg.draws + 1];
    const double best = std::max({random_max, flat, single});
    report.add(lambda, "ratio", best / bound);
    report.add(lambda, "ratio_unweighted", best / unweighted);
    report.add(lambda, "ratio_random", random_max / bound);
    report.add(lambda, "ratio_flat", flat / bound);
    report.add(lambda, "ratio_single", single / bound);
    report.add(lambda, "modes", static_cast<double>(s.modes.size()));
    flat_ratios.push_back(best / bound);
  }
  report.set_meta("flatness", flatness(flat_ratios));
  return report;
}

// ---- bilinear ------------------------------------------------------------------

double transversality(double lambda, double mu, double alpha, double m) {
  const double second = alpha <= 0 ? 0.0 : (m == 0 ? kInf : alpha * japanese_bracket(mu, m) / std::abs(m));
  return lambda / mu + second;
}

double bilinear_bound(int dim, double lambda, double mu, double alpha, double m) {
  return std::pow(alpha, -0.5) * std::sqrt(mu) * std::pow(alpha * mu, 0.5 * (dim - 2)) *
         std::sqrt(japanese_bracket(lambda, m) / lambda);
}

ExperimentReport bilinear_L2_sweep(const BilinearConfig& cfg) {
  const Grid& grid = cfg.grid;
  const int d = grid.dim();
  const double horizon = window(grid, cfg.horizon);
  const TimeGrid tg = quadratic_time_grid(horizon, cfg.time_samples);

  ExperimentReport report("bilinear");
  report.set_meta("dim", std::to_string(d));
  report.set_meta("n", std::to_string(grid.n()));
  report.set_meta("box_length", grid.box_length());
  report.set_meta("m", cfg.m);
  report.set_meta("lambda", cfg.lambda);
  report.set_meta("sign", std::to_string(cfg.sign));
  report.set_meta("threshold", cfg.threshold);
  report.set_meta("horizon", horizon);
  report.set_meta("draws", std::to_string(cfg.draws));
  report.set_meta("seed", std::to_string(cfg.seed));

  std::vector<double> evaluated;
  int combo = 0;
  for (double alpha : cfg.alphas) {
    for (double mu : cfg.mus) {
      ++combo;
      const double tv = transversality(cfg.lambda, mu, alpha, cfg.m);
      if (!(alpha > 0) || tv < cfg.threshold) {
        report.add(mu, alpha_tag("skipped", alpha), tv);
        continue;
      }
      const double theta = separation_angle(alpha);
      const double half = theta / 3;
      const Eigen::VectorXd c1 = direction(d, 0.0);
      const Eigen::VectorXd c2 = direction(d, cfg.sign > 0 ? theta : theta + M_PI);
      const Support s1 = shell_support(grid, cfg.lambda, cfg.m, &c1, half);
      const Support s2 = shell_support(grid, mu, cfg.m, &c2, half);
      if (s1.modes.empty() || s2.modes.empty()) {
        report.add(mu, alpha_tag("skipped_empty_cap", alpha), tv);
        continue;
      }
      std::mt19937_64 rng(cfg.seed + 104729 * combo);
      const Eigen::VectorXd t1 = cfg.lambda * c1, t2 = mu * c2;
      const auto fa = candidates(grid, s1, 1, cfg.draws, rng, &t1);
      const auto ga = candidates(grid, s2, 1, cfg.draws, rng, &t2);
      std::vector<double> ratio(fa.size());
      parallel_for(static_cast<int>(fa.size()), cfg.threads, [&](int k) {
        double acc = 0;
        for (std::size_t j = 0; j < tg.t.size(); ++j) {
          const Eigen::MatrixXcd u = wave_at(grid, s1, fa[k], +1, tg.t[j]);
          const Eigen::MatrixXcd v = wave_at(grid, s2, ga[k], cfg.sign, tg.t[j]);
          acc += tg.w[j] * grid.cell_volume() * (u.col(0).conjugate().cwiseProduct(v.col(0))).squaredNorm();
        }
        ratio[k] = std::sqrt(acc) / (fa[k].norm() * ga[k].norm());
      });
      const double best = *std::max_element(ratio.begin(), ratio.end());
      const double bound = bilinear_bound(d, cfg.lambda, mu, alpha, cfg.m);
      report.add(mu, alpha_tag("ratio", alpha), best / bound);
      evaluated.push_back(best / bound);
    }
  }
  report.set_meta("flatness", flatness(evaluated));
  report.set_meta("evaluated", std::to_string(evaluated.size()));
  return report;
}

ExperimentReport null_form_sweep(const NullFormConfig& cfg) {
  const Grid& grid = cfg.grid;
  const int d = grid.dim();
  const GammaRep<double> rep = build_gamma<double>(d);
  const int nd = rep.spinor_dim;
  const double horizon = window(grid, cfg.horizon);
  const TimeGrid tg = quadratic_time_grid(horizon, cfg.time_samples);
  const PropagatorSpec prop = PropagatorSpec::dirac_mass(d, cfg.m);
  const FreeFlow flow(grid, prop);
  Eigen::VectorXcd g0(nd);
  for (int k = 0; k < nd; ++k) g0(k) = rep.gamma[0](k, k);

  ExperimentReport report("null_form");
  report.set_meta("dim", std::to_string(d));
  report.set_meta("n", std::to_string(grid.n()));
  report.set_meta("box_length", grid.box_length());
  report.set_meta("m", cfg.m);
  report.set_meta("lambda", cfg.lambda);
  report.set_meta("mu", cfg.mu);
  report.set_meta("horizon", horizon);
  report.set_meta("draws", std::to_string(cfg.draws));
  report.set_meta("seed", std::to_string(cfg.seed));

  int combo = 0;
  for (double alpha : cfg.alphas) {
    ++combo;
    const double theta = separation_angle(alpha);
    const Eigen::VectorXd c1 = direction(d, 0.0), c2 = direction(d, theta);
    const Support s1 = shell_support(grid, cfg.lambda, cfg.m, &c1, theta / 3);
    const Support s2 = shell_support(grid, cfg.mu, cfg.m, &c2, theta / 3);
    if (s1.modes.empty() || s2.modes.empty()) {
      report.add(alpha, "skipped_empty_cap", 1);
      continue;
    }
    std::mt19937_64 rng(cfg.seed + 15485863 * combo);
    const auto fa = candidates(grid, s1, nd, cfg.draws, rng, nullptr);
    const auto ga = candidates(grid, s2, nd, cfg.draws, rng, nullptr);
    // Pi_+ projected data evolved by the Dirac flow
    auto field = [&](const Support& s, const Eigen::MatrixXcd& a) {
      SpinorField f(grid, nd, Repr::frequency);
      for (std::size_t i = 0; i < s.modes.size(); ++i)
        f.coefficients().row(s.modes[i]) = (flow.projection(s.modes[i]) * a.row(i).transpose()).transpose();
      return f;
    };
    std::vector<double> null(cfg.draws), plain(cfg.draws);
    parallel_for(cfg.draws, cfg.threads, [&](int k) {
      const SpinorField f = field(s1, fa[k]), g = field(s2, ga[k]);
      const double scale = f.l2_norm() * g.l2_norm();
      double an = 0, ap = 0;
      for (std::size_t j = 0; j < tg.t.size(); ++j) {
        const SpinorField u = to_physical(flow.apply(f, tg.t[j]));
        const SpinorField v = to_physical(flow.apply(g, tg.t[j]));
        const Eigen::MatrixXcd& uc = u.coefficients();
        const Eigen::MatrixXcd& vc = v.coefficients();
        const Eigen::VectorXcd bar = (uc.conjugate().cwiseProduct(vc)) * g0;
        const Eigen::VectorXcd dot = (uc.conjugate().cwiseProduct(vc)).rowwise().sum();
        an += tg.w[j] * grid.cell_volume() * bar.squaredNorm();
        ap += tg.w[j] * grid.cell_volume() * dot.squaredNorm();
      }
      null[k] = std::sqrt(an) / scale;
      plain[k] = std::sqrt(ap) / scale;
    });
    const double n_max = cfg.draws > 0 ? *std::max_element(null.begin(), null.end()) : 0.0;
    const double p_max = cfg.draws > 0 ? *std::max_element(plain.begin(), plain.end()) : 0.0;
    const double gain = p_max > 0 ? n_max / p_max : 0.0;
    report.add(alpha, "null", n_max);
    report.add(alpha, "plain", p_max);
    report.add(alpha, "gain", gain);
    report.add(alpha, "gain_over_alpha", gain / alpha);
  }
  return report;
}

// ---- Whitney -------------------------------------------------------------------

WhitneyResult whitney_reconstruct(const SpinorField& f, const SpinorField& g, double lambda, double mu,
                                  double m, int max_level) {
  if (f.repr() != Repr::frequency || g.repr() != Repr::frequency)
    throw std::invalid_argument("whitney_reconstruct: fields must be in frequency representation");
  if (!(f.grid() == g.grid()) || f.components() != g.components())
    throw std::invalid_argument("whitney_reconstruct: fields live on different spaces");
  const Grid& grid = f.grid();
  const GammaRep<double> rep = build_gamma<double>(grid.dim());
  auto product = [](const SpinorField& a, const SpinorField& b) -> Eigen::VectorXcd {
    return (a.coefficients().conjugate().cwiseProduct(b.coefficients())).rowwise().sum();
  };
  const Eigen::VectorXcd target = product(to_physical(littlewood_paley(f, lambda)),
                                          to_physical(littlewood_paley(g, mu)));

  const auto levels = whitney_pairs(grid.dim(), lambda, mu, m, max_level);
  WhitneyResult out;
  out.finest_level = levels.empty() ? 0 : levels.back().level;
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(grid.points());
  for (const auto& lvl : levels) {
    if (lvl.pairs.empty()) continue;
    ++out.levels;
    const CapFamily caps(grid.dim(), lvl.level);
    std::map<int, SpinorField> fk, gk;
    for (const auto& [a, b] : lvl.pairs) {
      if (!fk.count(a)) fk.emplace(a, to_physical(lambda_cap_project(f, lambda, caps, a, rep, m)));
      if (!gk.count(b)) gk.emplace(b, to_physical(lambda_cap_project(g, mu, caps, b, rep, m)));
      sum += product(fk.at(a), gk.at(b));
      ++out.pairs;
    }
  }
  const double scale = target.norm();
  out.residual = scale > 0 ? (sum - target).norm() / scale : (sum - target).norm();
  return out;
}

// ---- p-variation ----------------------------------------------------------------

PVarPath::PVarPath(std::vector<double> times, std::vector<Eigen::VectorXcd> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.empty()) throw std::invalid_argument("PVarPath: need at least one sample");
  if (times_.size() != values_.size()) throw std::invalid_argument("PVarPath: times and values differ in length");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) throw std::invalid_argument("PVarPath: times must increase strictly");
    if (values_[i].size() != values_[0].size()) throw std::invalid_argument("PVarPath: mixed value dimensions");
  }
}

PVarPath PVarPath::scalar(const std::vector<double>& samples) {
  std::vector<double> t;
  std::vector<Eigen::VectorXcd> v;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    t.push_back(static_cast<double>(i));
    v.push_back(Eigen::VectorXcd::Constant(1, samples[i]));
  }
  return PVarPath(std::move(t), std::move(v));
}

double vp_seminorm(const PVarPath& path, double p) {
  if (!(p >= 1)) throw std::invalid_argument("vp_seminorm: p must be >= 1");
  const auto& v = path.values();
  const std::size_t n = v.size();
  // best[j]: largest sum of ||increment||^p over chains ending at sample j
  std::vector<double> best(n, 0.0);
  double top = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) best[j] = std::max(best[j], best[i] + std::pow((v[j] - v[i]).norm(), p));
    top = std::max(top, best[j]);
  }
  return std::pow(top, 1.0 / p);
}

double vp_norm(const PVarPath& path, double p) {
  double sup = 0;
  for (const auto& x : path.values()) sup = std::max(sup, x.norm());
  return sup + vp_seminorm(path, p);
}

// ---- symbol identities -------------------------------------------------------------

double modulation_lhs(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta, double m, int s1, int s2) {
  const double a = japanese_bracket(xi.norm(), m), b = japanese_bracket(eta.norm(), m);
  const double diff = s1 * a - s2 * b;
  return std::abs(diff * diff - (m * m + (xi - eta).squaredNorm()));
}

double modulation_rhs(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta, double m, int s1, int s2) {
  const double nx = xi.norm(), ny = eta.norm();
  const double a = japanese_bracket(nx, m), b = japanese_bracket(ny, m);
  const double m2 = m * m;
  return 2 * m2 * (nx - ny) * (nx - ny) / (a * b + m2 + nx * ny) + (2 - s1 * s2) * m2 +
         2 * (nx * ny - s1 * s2 * xi.dot(eta));
}

namespace {

struct SymbolSample {
  Eigen::VectorXd xi, eta;
  double m;
  int s1, s2;
};

SymbolSample draw_symbol_sample(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  std::uniform_int_distribution<int> coin(0, 3);
  SymbolSample s;
  s.xi.resize(dim);
  s.eta.resize(dim);
  for (int j = 0; j < dim; ++j) s.xi(j) = normal(rng);
  for (int j = 0; j < dim; ++j) s.eta(j) = normal(rng);
  s.xi *= std::exp(log_scale(rng));
  s.eta *= std::exp(log_scale(rng));
  const int kind = coin(rng);
  const double mag = std::exp(log_scale(rng));
  s.m = kind == 0 ? 0.0 : (kind == 1 ? -mag : mag);
  s.s1 = coin(rng) % 2 ? 1 : -1;
  s.s2 = coin(rng) % 2 ? 1 : -1;
  return s;
}

}  // namespace

double modulation_identity_check(int samples, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const SymbolSample s = draw_symbol_sample(dim, rng);
    const double scale = 2 * s.m * s.m + s.xi.squaredNorm() + s.eta.squaredNorm();
    const double r = std::abs(modulation_lhs(s.xi, s.eta, s.m, s.s1, s.s2) -
                              modulation_rhs(s.xi, s.eta, s.m, s.s1, s.s2));
    worst = std::max(worst, r / scale);
  }
  return worst;
}

double null_structure_constant(int samples, int dim, std::uint64_t seed) {
  const GammaRep<double> rep = build_gamma<double>(dim);
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const SymbolSample s = draw_symbol_sample(dim, rng);
    const SpinorMatrix a = projection_matrix(rep, s.xi, s.m, s.s1);
    const SpinorMatrix b = projection_matrix(rep, s.eta, s.m, s.s2);
    const SpinorMatrix sandwich = a.adjoint() * rep.gamma[0] * b;
    const double lhs = Eigen::JacobiSVD<SpinorMatrix>(sandwich).singularValues()(0);
    const double nx = s.xi.norm(), ny = s.eta.norm();
    const double bx = japanese_bracket(nx, s.m), by = japanese_bracket(ny, s.m);
    const double am = std::abs(s.m);
    const double rhs = nx * ny / (bx * by) * angle(double(s.s1) * s.xi, double(s.s2) * s.eta) + am / bx + am / by;
    if (rhs > 0) worst = std::max(worst, lhs / rhs);
  }
  return worst;
}

}  // namespace diraclab
