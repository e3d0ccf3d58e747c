#pragma once

// Periodic grids on [0, L)^d, spinor fields with dual physical/frequency
// storage, the Parseval-normalised discrete Fourier transform and the
// cubic dealiasing projection.
//
// Transform normalisation: the frequency coefficients are
//   fhat(xi_k) = L^{d/2} / n^d * sum_j f(x_j) exp(-i xi_k . x_j),
// so that sum_k |fhat_k|^2 = (L/n)^d sum_j |f(x_j)|^2 (Parseval), and a plane
// wave with unit coefficient at xi_0 has physical samples L^{-d/2} e^{i xi_0 x}.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <iosfwd>
#include <memory>

namespace diraclab {

enum class Repr { physical, frequency };

class Grid {
 public:
  Grid(int dim, int n, double box_length);

  /// Desk-scale defaults: d = 2 -> n = 128, L = 16 pi; d = 3 -> n = 32, L = 8 pi.
  static Grid desk_default(int dim);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double box_length() const { return box_length_; }
  Eigen::Index points() const { return points_; }
  double spacing() const { return box_length_ / n_; }
  double cell_volume() const;
  double frequency_step() const;
  double max_axis_frequency() const;

  /// Lattice index along one axis -> signed wavenumber k in [-n/2, n/2).
  int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
  std::array<int, 3> wavenumbers(Eigen::Index point) const;
  Eigen::Index point_of(const std::array<int, 3>& wavenumbers) const;

  /// Row p holds xi_p = 2 pi k_p / L.
  const Eigen::MatrixXd& frequencies() const { return table_->xi; }
  const Eigen::VectorXd& frequency_norms() const { return table_->abs_xi; }
  /// Physical coordinate of sample point p.
  Eigen::VectorXd position(Eigen::Index point) const;

  bool operator==(const Grid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && box_length_ == other.box_length_;
  }

 private:
  struct FrequencyTable {
    Eigen::MatrixXd xi;
    Eigen::VectorXd abs_xi;
  };
  int dim_;
  int n_;
  double box_length_;
  Eigen::Index points_;
  std::shared_ptr<const FrequencyTable> table_;
};

/// Complex spinor-valued field on a periodic grid. Column c of coefficients()
/// holds component c over all grid points.
class SpinorField {
 public:
  SpinorField(Grid grid, int components, Repr repr);

  const Grid& grid() const { return grid_; }
  int components() const { return static_cast<int>(data_.cols()); }
  Repr repr() const { return repr_; }

  Eigen::MatrixXcd& coefficients() { return data_; }
  const Eigen::MatrixXcd& coefficients() const { return data_; }

  /// L^2 norm: sqrt(cell volume) * Frobenius norm in physical representation,
  /// plain l^2 norm of the coefficients in frequency representation.
  double l2_norm() const;

  void set_repr_unchecked(Repr repr) { repr_ = repr; }

  SpinorField& operator+=(const SpinorField& other);
  SpinorField& operator-=(const SpinorField& other);
  SpinorField& operator*=(std::complex<double> s);

 private:
  Grid grid_;
  Repr repr_;
  Eigen::MatrixXcd data_;
};

SpinorField operator+(SpinorField a, const SpinorField& b);
SpinorField operator-(SpinorField a, const SpinorField& b);
SpinorField operator*(std::complex<double> s, SpinorField a);

/// Physical -> frequency. Throws std::invalid_argument on a representation mismatch.
SpinorField to_frequency(SpinorField field);
/// Frequency -> physical. Throws std::invalid_argument on a representation mismatch.
SpinorField to_physical(SpinorField field);
void to_frequency_inplace(SpinorField& field);
void to_physical_inplace(SpinorField& field);

/// True when every nonzero mode satisfies |k_axis| < n/4 on every axis.
bool retained_by_dealias(const Grid& grid, Eigen::Index point);
/// Zeroes every mode with some |k_axis| >= n/4. Frequency representation only.
SpinorField dealias_cubic(SpinorField field);
void dealias_cubic_inplace(SpinorField& field);

/// Relative L^2 distance ||a - b|| / ||b|| (absolute when b = 0).
double relative_distance(const SpinorField& a, const SpinorField& b);

/// Snapshot text format:
///   # diraclab-field v1
///   # d=<d> n=<n> L=<L> components=<N> repr=<physical|frequency>
///   k0,k1[,k2],component,re,im
/// Rows are listed in storage order; the index tuple holds signed wavenumbers
/// in frequency representation and lattice indices in physical representation.
void write_snapshot(std::ostream& out, const SpinorField& field);
SpinorField read_snapshot(std::istream& in);

}  // namespace diraclab
