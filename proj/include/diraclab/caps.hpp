#pragma once

// Angular caps on S^{d-1} and the Whitney-type organisation of bilinear
// frequency interactions.
//
// Cap families are hierarchical: level j has angular size alpha = 2^{-j} and
// refines level j-1, so every cap has a unique parent. For d = 2 level j is
// the 2^j equal arcs of the circle. For d = 3 it is 2^j polar bands times
// 2^{j+1} longitude sectors (level 0 is the whole sphere). The caps partition
// the sphere, so the overlap count is 1. The origin xi = 0 is put in cap 0.

#include "diraclab/dirac_algebra.hpp"
#include "diraclab/spectral_field.hpp"

#include <utility>
#include <vector>

namespace diraclab {

class CapFamily {
 public:
  CapFamily(int dim, int level);

  int dim() const { return dim_; }
  int level() const { return level_; }
  double alpha() const;
  int count() const { return bands_ * sectors_; }
  int overlap_bound() const { return 1; }

  /// Cap containing xi / |xi|.
  int index_of(const Eigen::Ref<const Eigen::VectorXd>& xi) const;
  /// Unit vector at the centre of cap k.
  Eigen::VectorXd center(int k) const;
  /// Equal or adjacent caps (longitude and arcs wrap around; in d = 3 caps
  /// touching a pole are adjacent to every cap in the neighbouring bands).
  bool near(int a, int b) const;
  /// Index of the containing cap at level - 1.
  int parent(int k) const;

 private:
  int dim_;
  int level_;
  int bands_;
  int sectors_;
};

/// R_kappa (sign = +1) or R_{-kappa} (sign = -1): keeps modes with
/// sign * xi / |xi| in cap k. Frequency representation only.
SpinorField cap_project(const SpinorField& f, const CapFamily& caps, int k, int sign);

/// P_{lambda,kappa} = P_lambda (R_kappa Pi_+ + R_{-kappa} Pi_-).
SpinorField lambda_cap_project(const SpinorField& f, double lambda, const CapFamily& caps, int k,
                               const GammaRep<double>& rep, double m);

struct WhitneyLevel {
  int level = 0;
  std::vector<std::pair<int, int>> pairs;
};

/// Finest level used for (lambda, mu, m): log2(<min>_m / |m|) rounded down,
/// capped at max_level; max_level when m = 0.
int whitney_finest_level(double lambda, double mu, double m, int max_level);

/// Pairs (kappa, kappa~) grouped by level: a pair enters at level j when its
/// parents are near but it is not, and all near pairs enter at the finest level.
/// Every pair of finest-level caps descends from exactly one listed pair.
std::vector<WhitneyLevel> whitney_pairs(int dim, double lambda, double mu, double m, int max_level);

}  // namespace diraclab
