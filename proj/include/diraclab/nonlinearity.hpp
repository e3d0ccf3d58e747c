#pragma once

// Cubic nonlinearities F(psi) = sum coeff * (psi-bar A1 psi) A2 psi, their
// pointwise evaluation on fields, and the resonant decomposition
//   F(e^{i theta gamma^0} psi) = sum_{k in {-3,-1,1,3}} e^{i k theta gamma^0} F_k(psi).

#include "diraclab/dirac_algebra.hpp"
#include "diraclab/spectral_field.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace diraclab {

struct CubicTerm {
  SpinorMatrix a1;
  SpinorMatrix a2;
  Complex coeff{1, 0};
};

enum class NonlinearityKind { zero, soler, thirring, general };

std::string to_string(NonlinearityKind kind);

class NonlinearitySpec {
 public:
  static NonlinearitySpec zero(int dim);
  static NonlinearitySpec soler(int dim);
  /// Stored in Fierz form: (psi-bar psi) psi - (psi-bar g5 psi) g5 psi for d = 3.
  static NonlinearitySpec thirring(int dim);
  /// Throws std::invalid_argument unless every A1 and A2 commutes exactly
  /// with gamma^0 gamma^j for all j.
  static NonlinearitySpec general(int dim, std::vector<CubicTerm> terms);

  NonlinearityKind kind() const { return kind_; }
  const GammaRep<double>& rep() const { return rep_; }
  const std::vector<CubicTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  NonlinearitySpec(NonlinearityKind kind, GammaRep<double> rep, std::vector<CubicTerm> terms);
  NonlinearityKind kind_;
  GammaRep<double> rep_;
  std::vector<CubicTerm> terms_;
};

using CubicMap = std::function<Spinor(const Spinor&)>;

/// F(psi) at a single spinor.
Spinor eval(const NonlinearitySpec& spec, const Spinor& psi);
/// F applied pointwise to a physical-representation field.
SpinorField eval(const NonlinearitySpec& spec, const SpinorField& psi);
/// Applies any pointwise map to a physical-representation field.
SpinorField apply_pointwise(const CubicMap& map, const SpinorField& psi);

/// (psi-bar gamma^mu psi) gamma_mu psi with the index lowered by the metric.
Spinor thirring_direct(const GammaRep<double>& rep, const Spinor& psi);
/// |direct Thirring - Fierz form|; for d = 2 the Fierz form is the Soler term.
double fierz_residual(const Spinor& psi, const GammaRep<double>& rep);

/// Harmonics k = -3, -1, 1, 3 in that order.
constexpr std::array<int, 4> kResonantHarmonics{-3, -1, 1, 3};
int harmonic_slot(int k);

struct ResonantPieces {
  std::array<CubicMap, 4> piece;  // indexed by harmonic_slot(k)

  const CubicMap& operator[](int k) const { return piece[harmonic_slot(k)]; }
  /// sum_k e^{i k theta gamma^0} F_k(psi)
  Spinor reconstruct(const GammaRep<double>& rep, const Spinor& psi, double theta) const;
};

/// Closed forms: Soler F_1 = F; Thirring d = 3 F_1 and F_{-3} from the
/// E+- block computation; general specs via the block expansion of each term.
ResonantPieces resonant_decompose(const NonlinearitySpec& spec);
/// F_k applied pointwise to a physical-representation field (fixed-size fast
/// path for Thirring F_1 in d = 3).
SpinorField eval_resonant(const NonlinearitySpec& spec, int k, const SpinorField& psi);
/// Block expansion valid for every spec (used for general specs and as a
/// second closed form for Soler and Thirring).
ResonantPieces resonant_decompose_blocks(const NonlinearitySpec& spec);

struct OraclePieces {
  std::array<Spinor, 4> piece;  // indexed by harmonic_slot(k)
  double fit_residual = 0;      // even harmonics, relative to the largest sample
};

/// Samples F(e^{i theta_j gamma^0} psi) at theta_j = 2 pi j / 8 and resolves
/// the harmonics on each E+- block by a discrete Fourier transform. Throws
/// std::domain_error when the even harmonics exceed 1e-10 relative.
OraclePieces extract_pieces_oracle(const CubicMap& f, const GammaRep<double>& rep, const Spinor& psi);
OraclePieces extract_pieces_oracle(const NonlinearitySpec& spec, const Spinor& psi);

/// e^{i theta gamma^0} psi.
Spinor gamma0_phase(const GammaRep<double>& rep, const Spinor& psi, double theta);

}  // namespace diraclab
