#include "diraclab/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diraclab {

namespace {

Complex bilinear(const GammaRep<double>& rep, const Spinor& a, const SpinorMatrix& m, const Spinor& b) {
  return (a.adjoint() * rep.gamma[0] * m * b)(0, 0);
}

Spinor eval_terms(const GammaRep<double>& rep, const std::vector<CubicTerm>& terms, const Spinor& psi) {
  Spinor out = Spinor::Zero(psi.size());
  for (const auto& t : terms) out += t.coeff * bilinear(rep, psi, t.a1, psi) * (t.a2 * psi);
  return out;
}

}  // namespace

std::string to_string(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::zero: return "zero";
    case NonlinearityKind::soler: return "soler";
    case NonlinearityKind::thirring: return "thirring";
    case NonlinearityKind::general: return "general";
  }
  return "unknown";
}

NonlinearitySpec::NonlinearitySpec(NonlinearityKind kind, GammaRep<double> rep,
                                   std::vector<CubicTerm> terms)
    : kind_(kind), rep_(std::move(rep)), terms_(std::move(terms)) {}

NonlinearitySpec NonlinearitySpec::zero(int dim) {
  return {NonlinearityKind::zero, build_gamma<double>(dim), {}};
}

NonlinearitySpec NonlinearitySpec::soler(int dim) {
  auto rep = build_gamma<double>(dim);
  const auto id = rep.identity();
  return {NonlinearityKind::soler, rep, {{id, id, 1.0}}};
}

NonlinearitySpec NonlinearitySpec::thirring(int dim) {
  auto rep = build_gamma<double>(dim);
  const auto id = rep.identity();
  std::vector<CubicTerm> terms{{id, id, 1.0}};
  if (dim == 3) terms.push_back({rep.gamma5, rep.gamma5, -1.0});
  return {NonlinearityKind::thirring, rep, terms};
}

NonlinearitySpec NonlinearitySpec::general(int dim, std::vector<CubicTerm> terms) {
  auto rep = build_gamma<double>(dim);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (t.a1.rows() != rep.spinor_dim || t.a1.cols() != rep.spinor_dim ||
        t.a2.rows() != rep.spinor_dim || t.a2.cols() != rep.spinor_dim)
      throw std::invalid_argument("NonlinearitySpec::general: term " + std::to_string(i) +
                                  " has matrices of the wrong size");
    if (null_condition_residual(rep, t.a1) != 0 || null_condition_residual(rep, t.a2) != 0)
      throw std::invalid_argument("NonlinearitySpec::general: term " + std::to_string(i) +
                                  " violates the null condition gamma^0 gamma^j A = A gamma^0 gamma^j");
  }
  return {NonlinearityKind::general, rep, std::move(terms)};
}

Spinor eval(const NonlinearitySpec& spec, const Spinor& psi) {
  if (psi.size() != spec.rep().spinor_dim)
    throw std::invalid_argument("eval: spinor length does not match the representation");
  return eval_terms(spec.rep(), spec.terms(), psi);
}

SpinorField apply_pointwise(const CubicMap& map, const SpinorField& psi) {
  if (psi.repr() != Repr::physical)
    throw std::invalid_argument("nonlinearity: field must be in physical representation");
  SpinorField out(psi.grid(), psi.components(), Repr::physical);
  const auto& in = psi.coefficients();
  auto& data = out.coefficients();
  Spinor v(psi.components());
  for (Eigen::Index p = 0; p < in.rows(); ++p) {
    v = in.row(p).transpose();
    data.row(p) = map(v).transpose();
  }
  return out;
}

SpinorField eval(const NonlinearitySpec& spec, const SpinorField& psi) {
  if (psi.repr() != Repr::physical)
    throw std::invalid_argument("nonlinearity: field must be in physical representation");
  SpinorField out(psi.grid(), psi.components(), Repr::physical);
  if (spec.is_zero()) return out;
  const auto& rep = spec.rep();
  const auto& in = psi.coefficients();
  auto& data = out.coefficients();
  const int nd = psi.components();
  // gamma^0 is diagonal: psi-bar A psi = sum_k g0_k conj(psi_k) (A psi)_k.
  Eigen::VectorXd g0(nd);
  for (int k = 0; k < nd; ++k) g0(k) = rep.gamma[0](k, k).real();
  const bool scalar_only = spec.terms().size() == 1 && spec.terms()[0].a1.isIdentity(0) &&
                           spec.terms()[0].a2.isIdentity(0);
  if (spec.kind() == NonlinearityKind::thirring && nd == 4) {
    // (psi-bar psi) psi - (psi-bar g5 psi) g5 psi with fixed-size arithmetic
    const Eigen::Matrix4cd g5 = rep.gamma5;
    const Eigen::Matrix4cd bar_g5 = g0.asDiagonal() * g5;
    for (Eigen::Index p = 0; p < in.rows(); ++p) {
      const Eigen::Vector4cd x = in.row(p).transpose();
      double rho = 0;
      for (int k = 0; k < 4; ++k) rho += g0(k) * std::norm(x(k));
      const Complex b5 = x.dot(bar_g5 * x);
      data.row(p) = (rho * x - b5 * (g5 * x)).transpose();
    }
    return out;
  }
  Spinor v(nd), w(nd);
  for (Eigen::Index p = 0; p < in.rows(); ++p) {
    v = in.row(p).transpose();
    if (scalar_only) {
      double rho = 0;
      for (int k = 0; k < nd; ++k) rho += g0(k) * std::norm(v(k));
      data.row(p) = (spec.terms()[0].coeff * rho) * in.row(p);
      continue;
    }
    w.setZero();
    for (const auto& t : spec.terms()) {
      const Spinor a1v = t.a1 * v;
      Complex b = 0;
      for (int k = 0; k < nd; ++k) b += g0(k) * std::conj(v(k)) * a1v(k);
      w += (t.coeff * b) * (t.a2 * v);
    }
    data.row(p) = w.transpose();
  }
  return out;
}

Spinor thirring_direct(const GammaRep<double>& rep, const Spinor& psi) {
  Spinor out = Spinor::Zero(psi.size());
  for (int mu = 0; mu <= rep.dim; ++mu)
    out += bilinear(rep, psi, rep.gamma[mu], psi) * (rep.lowered(mu) * psi);
  return out;
}

double fierz_residual(const Spinor& psi, const GammaRep<double>& rep) {
  const Spinor direct = thirring_direct(rep, psi);
  const Spinor fierz = eval(NonlinearitySpec::thirring(rep.dim), psi);
  return (direct - fierz).norm();
}

int harmonic_slot(int k) {
  switch (k) {
    case -3: return 0;
    case -1: return 1;
    case 1: return 2;
    case 3: return 3;
  }
  throw std::invalid_argument("harmonic_slot: k must be one of -3, -1, 1, 3");
}

Spinor gamma0_phase(const GammaRep<double>& rep, const Spinor& psi, double theta) {
  Spinor out = psi;
  for (int k = 0; k < psi.size(); ++k)
    out(k) *= std::exp(Complex(0, theta * rep.gamma[0](k, k).real()));
  return out;
}

Spinor ResonantPieces::reconstruct(const GammaRep<double>& rep, const Spinor& psi, double theta) const {
  Spinor out = Spinor::Zero(psi.size());
  for (int k : kResonantHarmonics) out += gamma0_phase(rep, piece[harmonic_slot(k)](psi), k * theta);
  return out;
}

ResonantPieces resonant_decompose_blocks(const NonlinearitySpec& spec) {
  // psi = psi_+ + psi_- with e^{i theta gamma^0} psi_+- = e^{+- i theta} psi_+-. The
  // conjugated factor contributes -a, so a term (psi_a A1 psi_b) A2 psi_c carries
  // e^{i n theta} with n = -a + b + c; its E+ part belongs to F_n and its E- part
  // to F_{-n}.
  const auto rep = spec.rep();
  const auto terms = spec.terms();
  const SpinorMatrix ep = energy_projector(rep, +1).matrix;
  const SpinorMatrix em = energy_projector(rep, -1).matrix;
  ResonantPieces out;
  for (int k : kResonantHarmonics) {
    out.piece[harmonic_slot(k)] = [rep, terms, ep, em, k](const Spinor& psi) {
      const Spinor parts[2] = {ep * psi, em * psi};
      const int sgn[2] = {+1, -1};
      Spinor acc = Spinor::Zero(psi.size());
      for (const auto& t : terms) {
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            const Complex s = t.coeff * bilinear(rep, parts[a], t.a1, parts[b]);
            if (s == Complex(0)) continue;
            for (int c = 0; c < 2; ++c) {
              const int n = -sgn[a] + sgn[b] + sgn[c];
              if (n == k) acc += s * (ep * (t.a2 * parts[c]));
              if (n == -k) acc += s * (em * (t.a2 * parts[c]));
            }
          }
        }
      }
      return acc;
    };
  }
  return out;
}

ResonantPieces resonant_decompose(const NonlinearitySpec& spec) {
  const auto rep = spec.rep();
  auto zero_map = [](const Spinor& psi) -> Spinor { return Spinor::Zero(psi.size()); };
  ResonantPieces out;
  for (auto& p : out.piece) p = zero_map;
  switch (spec.kind()) {
    case NonlinearityKind::zero:
      return out;
    case NonlinearityKind::soler:
      out.piece[harmonic_slot(1)] = [spec](const Spinor& psi) { return eval(spec, psi); };
      return out;
    case NonlinearityKind::thirring: {
      if (rep.dim == 2) {
        out.piece[harmonic_slot(1)] = [spec](const Spinor& psi) { return eval(spec, psi); };
        return out;
      }
      const SpinorMatrix ep = energy_projector(rep, +1).matrix;
      const SpinorMatrix em = energy_projector(rep, -1).matrix;
      const SpinorMatrix g5 = rep.gamma5;
      // Thirring = Soler - G with G = (psi-bar g5 psi) g5 psi, so the G pieces enter with a minus sign.
      out.piece[harmonic_slot(1)] = [rep, ep, em, g5](const Spinor& psi) {
        const Spinor pp = ep * psi, pm = em * psi;
        return Spinor(bilinear(rep, psi, rep.identity(), psi) * psi -
                      bilinear(rep, pm, g5, pp) * (g5 * pm) - bilinear(rep, pp, g5, pm) * (g5 * pp));
      };
      out.piece[harmonic_slot(-3)] = [rep, ep, em, g5](const Spinor& psi) {
        const Spinor pp = ep * psi, pm = em * psi;
        return Spinor(-(bilinear(rep, pp, g5, pm) * (g5 * pm) + bilinear(rep, pm, g5, pp) * (g5 * pp)));
      };
      return out;
    }
    case NonlinearityKind::general:
      return resonant_decompose_blocks(spec);
  }
  return out;
}

SpinorField eval_resonant(const NonlinearitySpec& spec, int k, const SpinorField& psi) {
  if (psi.repr() != Repr::physical)
    throw std::invalid_argument("nonlinearity: field must be in physical representation");
  harmonic_slot(k);
  const auto& rep = spec.rep();
  if (k == 1 && (spec.kind() == NonlinearityKind::soler || spec.is_zero() ||
                 (spec.kind() == NonlinearityKind::thirring && rep.dim == 2)))
    return eval(spec, psi);
  if (!(k == 1 && spec.kind() == NonlinearityKind::thirring && rep.dim == 3))
    return apply_pointwise(resonant_decompose(spec)[k], psi);

  // (psi-bar psi) psi - (bar(psi_-) g5 psi_+) g5 psi_- - (bar(psi_+) g5 psi_-) g5 psi_+
  Eigen::Matrix4cd g5 = rep.gamma5;
  Eigen::Vector4d g0, up, dn;
  for (int c = 0; c < 4; ++c) {
    g0(c) = rep.gamma[0](c, c).real();
    up(c) = g0(c) > 0 ? 1 : 0;
    dn(c) = 1 - up(c);
  }
  const Eigen::Matrix4cd bar_g5 = g0.asDiagonal() * g5;
  SpinorField out(psi.grid(), 4, Repr::physical);
  const auto& in = psi.coefficients();
  auto& data = out.coefficients();
  for (Eigen::Index p = 0; p < in.rows(); ++p) {
    const Eigen::Vector4cd v = in.row(p).transpose();
    const Eigen::Vector4cd vp = up.cwiseProduct(v), vm = dn.cwiseProduct(v);
    double rho = 0;
    for (int c = 0; c < 4; ++c) rho += g0(c) * std::norm(v(c));
    const Complex bmp = vm.dot(bar_g5 * vp), bpm = vp.dot(bar_g5 * vm);  // dot conjugates the left factor
    data.row(p) = (rho * v - bmp * (g5 * vm) - bpm * (g5 * vp)).transpose();
  }
  return out;
}

OraclePieces extract_pieces_oracle(const CubicMap& f, const GammaRep<double>& rep, const Spinor& psi) {
  constexpr int kSamples = 8;
  const int nd = static_cast<int>(psi.size());
  const SpinorMatrix ep = energy_projector(rep, +1).matrix;
  const SpinorMatrix em = energy_projector(rep, -1).matrix;
  std::array<Spinor, kSamples> plus, minus;
  double scale = 0;
  for (int j = 0; j < kSamples; ++j) {
    const double theta = 2 * std::numbers::pi * j / kSamples;
    const Spinor g = f(gamma0_phase(rep, psi, theta));
    scale = std::max(scale, g.norm());
    plus[j] = ep * g;
    minus[j] = em * g;
  }
  // coefficient of e^{i n theta} on each block, n = 0..7
  auto harmonic = [&](const std::array<Spinor, kSamples>& s, int n) {
    Spinor acc = Spinor::Zero(nd);
    for (int j = 0; j < kSamples; ++j)
      acc += std::exp(Complex(0, -2 * std::numbers::pi * n * j / kSamples)) * s[j];
    return Spinor(acc / double(kSamples));
  };
  OraclePieces out;
  for (int k : kResonantHarmonics) {
    const int np = ((k % kSamples) + kSamples) % kSamples;
    const int nm = ((-k % kSamples) + kSamples) % kSamples;
    out.piece[harmonic_slot(k)] = harmonic(plus, np) + harmonic(minus, nm);
  }
  double even = 0;
  for (int n = 0; n < kSamples; n += 2)
    even = std::max({even, harmonic(plus, n).norm(), harmonic(minus, n).norm()});
  out.fit_residual = scale > 0 ? even / scale : even;
  if (out.fit_residual > 1e-10)
    throw std::domain_error("extract_pieces_oracle: map is not cubic and phase compatible (even harmonic residual " +
                            std::to_string(out.fit_residual) + ")");
  return out;
}

OraclePieces extract_pieces_oracle(const NonlinearitySpec& spec, const Spinor& psi) {
  return extract_pieces_oracle([&spec](const Spinor& v) { return eval(spec, v); }, spec.rep(), psi);
}

}  // namespace diraclab
