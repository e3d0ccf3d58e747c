#pragma once

// Smooth initial data for experiments:
//   fhat(xi) = A exp(-|xi - xi0|^2 / w^2) v
// with a fixed polarisation spinor v, optionally projected onto an energy
// branch, frequency-localised and rescaled to a target norm.

#include "diraclab/multipliers.hpp"

#include <optional>
#include <vector>

namespace diraclab {

struct DataProfile {
  double amplitude = 1;
  std::vector<double> center;  // xi0; missing entries are 0
  double width = 1;
  int projection_sign = +1;    // +1 / -1: apply Pi_+- with projection_mass; 0: none
  double projection_mass = 0;
  double band_lo = 0;          // band_hi > 0 enables P_[band_lo, band_hi]
  double band_hi = 0;
  double low_pass = 0;         // > 0 enables P_{<= low_pass}
  /// Rescale so that the weighted norm equals target_norm (skipped when target_norm <= 0).
  double target_norm = 0.05;
  std::optional<SobolevWeight> norm_weight;  // default H^{s_d, sigma_d}_1
};

/// The fixed polarisation: components (1 + i k / 2), normalised.
Spinor default_polarization(int spinor_dim);

/// Frequency-representation data on `grid`. Throws std::invalid_argument when
/// the localisation leaves nothing to normalise.
SpinorField make_data(const Grid& grid, const GammaRep<double>& rep, const DataProfile& profile);

}  // namespace diraclab
