#include "diraclab/nonlinearity.hpp"

#include <doctest.h>

#include <random>

using namespace diraclab;

namespace {

Spinor random_spinor(std::mt19937_64& rng, int nd) {
  std::normal_distribution<double> g;
  Spinor s(nd);
  for (int i = 0; i < nd; ++i) s(i) = Complex(g(rng), g(rng));
  return s;
}

// (psi-bar gamma^mu psi) gamma_mu psi, summed by hand
Spinor thirring_by_hand(const GammaRep<double>& rep, const Spinor& psi) {
  Spinor out = Spinor::Zero(rep.spinor_dim);
  for (int mu = 0; mu <= rep.dim; ++mu) {
    Complex j = 0;
    for (int a = 0; a < rep.spinor_dim; ++a)
      for (int b = 0; b < rep.spinor_dim; ++b)
        j += std::conj(psi(a)) * (rep.gamma[0] * rep.gamma[mu])(a, b) * psi(b);
    out += (mu == 0 ? 1.0 : -1.0) * j * (rep.gamma[mu] * psi);
  }
  return out;
}

// Harmonics on the E+- blocks from eight equally spaced phases.
std::array<Spinor, 4> harmonics(const NonlinearitySpec& spec, const Spinor& psi) {
  const auto& rep = spec.rep();
  std::array<Spinor, 4> out;
  for (auto& s : out) s = Spinor::Zero(rep.spinor_dim);
  for (int j = 0; j < 8; ++j) {
    const double th = 2 * M_PI * j / 8;
    const Spinor v = eval(spec, gamma0_phase(rep, psi, th));
    for (int k : kResonantHarmonics) {
      for (int a = 0; a < rep.spinor_dim; ++a) {
        const double g0 = rep.gamma[0](a, a).real();
        out[harmonic_slot(k)](a) += v(a) * std::polar(1.0, -k * g0 * th) / 8.0;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Fierz identity") {
  std::mt19937_64 rng(17);
  const auto r3 = build_gamma(3);
  const auto r2 = build_gamma(2);
  const auto th3 = NonlinearitySpec::thirring(3);
  const auto so2 = NonlinearitySpec::soler(2);
  const auto th2 = NonlinearitySpec::thirring(2);
  for (int i = 0; i < 1000; ++i) {
    const Spinor p3 = random_spinor(rng, 4);
    const Spinor direct = thirring_by_hand(r3, p3);
    CHECK((direct - thirring_direct(r3, p3)).cwiseAbs().maxCoeff() <= 1e-12 * (1 + direct.norm()));
    CHECK((direct - eval(th3, p3)).cwiseAbs().maxCoeff() <= 1e-12 * (1 + direct.norm()));
    CHECK(fierz_residual(p3, r3) <= 1e-12 * (1 + direct.norm()));
    // in d = 2 the current term collapses to the Soler term
    const Spinor p2 = random_spinor(rng, 2);
    const Spinor d2 = thirring_by_hand(r2, p2);
    CHECK((d2 - eval(so2, p2)).cwiseAbs().maxCoeff() <= 1e-12 * (1 + d2.norm()));
    CHECK((d2 - eval(th2, p2)).cwiseAbs().maxCoeff() <= 1e-12 * (1 + d2.norm()));
    CHECK(fierz_residual(p2, r2) <= 1e-12 * (1 + d2.norm()));
  }
}

TEST_CASE("nonlinearities are phase covariant and respect the null condition") {
  std::mt19937_64 rng(3);
  for (int d : {2, 3}) {
    for (const auto& spec : {NonlinearitySpec::soler(d), NonlinearitySpec::thirring(d)}) {
      for (const auto& t : spec.terms()) {
        CHECK(null_condition_residual(spec.rep(), t.a1) == 0);
        CHECK(null_condition_residual(spec.rep(), t.a2) == 0);
      }
      const Spinor psi = random_spinor(rng, spec.rep().spinor_dim);
      const Complex ph = std::polar(1.0, 0.9);
      CHECK((eval(spec, Spinor(ph * psi)) - ph * eval(spec, psi)).norm() <= 1e-13);
      CHECK((eval(spec, Spinor(2.0 * psi)) - 8.0 * eval(spec, psi)).norm() <= 1e-12);
    }
  }
  CHECK(NonlinearitySpec::zero(2).is_zero());
  CHECK(eval(NonlinearitySpec::zero(3), random_spinor(rng, 4)).norm() == 0);
}

TEST_CASE("general specs enforce the null condition") {
  const auto rep = build_gamma(3);
  CHECK_NOTHROW(NonlinearitySpec::general(3, {{rep.identity(), rep.gamma5, 1.0}}));
  CHECK_THROWS_AS(NonlinearitySpec::general(3, {{rep.gamma[0], rep.identity(), 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearitySpec::general(3, {{rep.identity(), rep.gamma[2], 1.0}}), std::invalid_argument);
}

TEST_CASE("resonant decomposition") {
  std::mt19937_64 rng(23);
  const auto rep3 = build_gamma(3);
  std::vector<NonlinearitySpec> specs{NonlinearitySpec::soler(2), NonlinearitySpec::soler(3),
                                      NonlinearitySpec::thirring(2), NonlinearitySpec::thirring(3),
                                      NonlinearitySpec::general(3, {{rep3.gamma5, rep3.gamma5, Complex(0.5, 1)},
                                                                     {rep3.identity(), rep3.gamma5, 2.0}})};
  for (const auto& spec : specs) {
    const auto& rep = spec.rep();
    const auto closed = resonant_decompose(spec);
    const auto blocks = resonant_decompose_blocks(spec);
    for (int i = 0; i < 100; ++i) {
      const Spinor psi = random_spinor(rng, rep.spinor_dim);
      const auto want = harmonics(spec, psi);
      const auto oracle = extract_pieces_oracle(spec, psi);
      CHECK(oracle.fit_residual <= 1e-12);
      const double scale = 1 + eval(spec, psi).norm();
      for (int k : kResonantHarmonics) {
        const Spinor& w = want[harmonic_slot(k)];
        CHECK((closed[k](psi) - w).norm() <= 1e-12 * scale);
        CHECK((blocks[k](psi) - w).norm() <= 1e-12 * scale);
        CHECK((oracle.piece[harmonic_slot(k)] - w).norm() <= 1e-12 * scale);
      }
      for (double th : {0.3, 1.7, -2.2}) {
        const Spinor full = eval(spec, gamma0_phase(rep, psi, th));
        CHECK((closed.reconstruct(rep, psi, th) - full).norm() <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("Soler keeps only F_1 and Thirring has no F_-1 or F_3") {
  std::mt19937_64 rng(5);
  for (int d : {2, 3}) {
    const auto soler = NonlinearitySpec::soler(d);
    const auto thirring = NonlinearitySpec::thirring(d);
    for (int i = 0; i < 100; ++i) {
      const Spinor psi = random_spinor(rng, spinor_dimension(d));
      const auto so = extract_pieces_oracle(soler, psi);
      const double s = 1 + eval(soler, psi).norm();
      CHECK((so.piece[harmonic_slot(1)] - eval(soler, psi)).norm() <= 1e-12 * s);
      for (int k : {-3, -1, 3}) CHECK(so.piece[harmonic_slot(k)].norm() <= 1e-12 * s);
      const auto th = extract_pieces_oracle(thirring, psi);
      const double t = 1 + eval(thirring, psi).norm();
      CHECK(th.piece[harmonic_slot(-1)].norm() <= 1e-12 * t);
      CHECK(th.piece[harmonic_slot(3)].norm() <= 1e-12 * t);
      if (d == 3) {
        // the gamma5 terms leave a nontrivial F_-3, so F_1 differs from F
        CHECK(th.piece[harmonic_slot(-3)].norm() > 1e-6);
      }
    }
  }
}

TEST_CASE("oracle rejects maps that are not cubic in the phase") {
  const auto rep = build_gamma(2);
  Spinor psi(2);
  psi << Complex(1, 0.5), Complex(-0.3, 2);
  const CubicMap quad = [](const Spinor& v) { return Spinor(v.cwiseProduct(v)); };
  CHECK_THROWS_AS(extract_pieces_oracle(quad, rep, psi), std::domain_error);
  CHECK_THROWS_AS(harmonic_slot(2), std::invalid_argument);
}

TEST_CASE("field evaluation matches pointwise evaluation") {
  for (int d : {2, 3}) {
    const Grid g(d, d == 2 ? 16 : 4, 3.0);
    const int nd = spinor_dimension(d);
    std::mt19937_64 rng(40 + d);
    SpinorField psi(g, nd, Repr::physical);
    for (Eigen::Index p = 0; p < g.points(); ++p) psi.coefficients().row(p) = random_spinor(rng, nd).transpose();
    for (const auto& spec : {NonlinearitySpec::soler(d), NonlinearitySpec::thirring(d)}) {
      const SpinorField f = eval(spec, psi);
      const auto pieces = resonant_decompose(spec);
      const SpinorField f1 = eval_resonant(spec, 1, psi);
      double e0 = 0, e1 = 0;
      for (Eigen::Index p = 0; p < g.points(); ++p) {
        const Spinor v = psi.coefficients().row(p).transpose();
        e0 = std::max(e0, (f.coefficients().row(p).transpose() - eval(spec, v)).norm());
        e1 = std::max(e1, (f1.coefficients().row(p).transpose() - pieces[1](v)).norm());
      }
      CHECK(e0 <= 1e-12);
      CHECK(e1 <= 1e-12);
    }
    CHECK_THROWS_AS(eval(NonlinearitySpec::soler(d), to_frequency(psi)), std::invalid_argument);
  }
}
