#include "diraclab/spectral_field.hpp"

#include "fourier.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace diraclab {

Grid::Grid(int dim, int n, double box_length) : dim_(dim), n_(n), box_length_(box_length) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("Grid: dimension must be 2 or 3, got " + std::to_string(dim));
  if (n < 4 || (n & (n - 1)) != 0)
    throw std::invalid_argument("Grid: points per axis must be a power of two >= 4, got " +
                                std::to_string(n));
  if (!(box_length > 0))
    throw std::invalid_argument("Grid: box length must be positive");
  points_ = 1;
  for (int i = 0; i < dim; ++i) points_ *= n;

  auto table = std::make_shared<FrequencyTable>();
  table->xi.resize(points_, dim);
  table->abs_xi.resize(points_);
  const double step = frequency_step();
  for (Eigen::Index p = 0; p < points_; ++p) {
    const auto k = wavenumbers(p);
    for (int a = 0; a < dim; ++a) table->xi(p, a) = step * k[a];
    table->abs_xi(p) = table->xi.row(p).norm();
  }
  table_ = std::move(table);
}

Grid Grid::desk_default(int dim) {
  if (dim == 2) return Grid(2, 128, 16 * std::numbers::pi);
  if (dim == 3) return Grid(3, 32, 8 * std::numbers::pi);
  throw std::invalid_argument("Grid::desk_default: dimension must be 2 or 3");
}

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }
double Grid::frequency_step() const { return 2 * std::numbers::pi / box_length_; }
double Grid::max_axis_frequency() const { return std::numbers::pi * n_ / box_length_; }

std::array<int, 3> Grid::wavenumbers(Eigen::Index point) const {
  std::array<int, 3> k{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    k[a] = wavenumber(static_cast<int>(point % n_));
    point /= n_;
  }
  return k;
}

Eigen::Index Grid::point_of(const std::array<int, 3>& k) const {
  Eigen::Index p = 0;
  for (int a = 0; a < dim_; ++a) {
    int idx = ((k[a] % n_) + n_) % n_;
    p = p * n_ + idx;
  }
  return p;
}

Eigen::VectorXd Grid::position(Eigen::Index point) const {
  Eigen::VectorXd x(dim_);
  for (int a = dim_ - 1; a >= 0; --a) {
    x(a) = spacing() * static_cast<double>(point % n_);
    point /= n_;
  }
  return x;
}

SpinorField::SpinorField(Grid grid, int components, Repr repr)
    : grid_(std::move(grid)), repr_(repr), data_(Eigen::MatrixXcd::Zero(grid_.points(), components)) {}

double SpinorField::l2_norm() const {
  const double frob = data_.norm();
  return repr_ == Repr::physical ? std::sqrt(grid_.cell_volume()) * frob : frob;
}

namespace {
void check_compatible(const SpinorField& a, const SpinorField& b, const char* what) {
  if (!(a.grid() == b.grid()) || a.components() != b.components() || a.repr() != b.repr())
    throw std::invalid_argument(std::string(what) + ": incompatible fields");
}
}  // namespace

SpinorField& SpinorField::operator+=(const SpinorField& other) {
  check_compatible(*this, other, "operator+=");
  data_ += other.data_;
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& other) {
  check_compatible(*this, other, "operator-=");
  data_ -= other.data_;
  return *this;
}

SpinorField& SpinorField::operator*=(std::complex<double> s) {
  data_ *= s;
  return *this;
}

SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
SpinorField operator*(std::complex<double> s, SpinorField a) { return a *= s; }

void to_frequency_inplace(SpinorField& field) {
  if (field.repr() != Repr::physical)
    throw std::invalid_argument("to_frequency: field is not in physical representation");
  const Grid& g = field.grid();
  detail::dft_columns(field.coefficients(), g.dim(), g.n(), -1);
  field.coefficients() *= std::pow(g.box_length(), 0.5 * g.dim()) / static_cast<double>(g.points());
  field.set_repr_unchecked(Repr::frequency);
}

void to_physical_inplace(SpinorField& field) {
  if (field.repr() != Repr::frequency)
    throw std::invalid_argument("to_physical: field is not in frequency representation");
  const Grid& g = field.grid();
  detail::dft_columns(field.coefficients(), g.dim(), g.n(), +1);
  field.coefficients() *= std::pow(g.box_length(), -0.5 * g.dim());
  field.set_repr_unchecked(Repr::physical);
}

SpinorField to_frequency(SpinorField field) {
  to_frequency_inplace(field);
  return field;
}

SpinorField to_physical(SpinorField field) {
  to_physical_inplace(field);
  return field;
}

bool retained_by_dealias(const Grid& grid, Eigen::Index point) {
  const auto k = grid.wavenumbers(point);
  const int cut = grid.n() / 4;
  for (int a = 0; a < grid.dim(); ++a)
    if (std::abs(k[a]) >= cut) return false;
  return true;
}

void dealias_cubic_inplace(SpinorField& field) {
  if (field.repr() != Repr::frequency)
    throw std::invalid_argument("dealias_cubic: field is not in frequency representation");
  const Grid& g = field.grid();
  auto& c = field.coefficients();
  for (Eigen::Index p = 0; p < g.points(); ++p)
    if (!retained_by_dealias(g, p)) c.row(p).setZero();
}

SpinorField dealias_cubic(SpinorField field) {
  dealias_cubic_inplace(field);
  return field;
}

double relative_distance(const SpinorField& a, const SpinorField& b) {
  SpinorField diff = a - b;
  const double nb = b.l2_norm();
  const double nd = diff.l2_norm();
  return nb > 0 ? nd / nb : nd;
}

void write_snapshot(std::ostream& out, const SpinorField& field) {
  const Grid& g = field.grid();
  out << "# diraclab-field v1\n";
  out << "# d=" << g.dim() << " n=" << g.n() << " L=" << std::setprecision(17) << g.box_length()
      << " components=" << field.components()
      << " repr=" << (field.repr() == Repr::physical ? "physical" : "frequency") << "\n";
  for (int a = 0; a < g.dim(); ++a) out << "k" << a << ",";
  out << "component,re,im\n";
  const auto& c = field.coefficients();
  for (Eigen::Index p = 0; p < g.points(); ++p) {
    auto k = g.wavenumbers(p);
    if (field.repr() == Repr::physical)
      for (int a = 0; a < g.dim(); ++a) k[a] = ((k[a] % g.n()) + g.n()) % g.n();
    for (int comp = 0; comp < field.components(); ++comp) {
      for (int a = 0; a < g.dim(); ++a) out << k[a] << ",";
      out << comp << "," << std::setprecision(17) << c(p, comp).real() << "," << c(p, comp).imag()
          << "\n";
    }
  }
}

SpinorField read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "# diraclab-field v1")
    throw std::runtime_error("read_snapshot: missing format header");
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw std::runtime_error("read_snapshot: missing grid header");
  int d = 0, n = 0, comps = 0;
  double L = 0;
  std::string repr;
  {
    std::istringstream hs(line.substr(2));
    std::string tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      if (key == "d") d = std::stoi(val);
      else if (key == "n") n = std::stoi(val);
      else if (key == "L") L = std::stod(val);
      else if (key == "components") comps = std::stoi(val);
      else if (key == "repr") repr = val;
    }
  }
  if (repr != "physical" && repr != "frequency")
    throw std::runtime_error("read_snapshot: bad repr '" + repr + "'");
  SpinorField field(Grid(d, n, L), comps, repr == "physical" ? Repr::physical : Repr::frequency);
  std::getline(in, line);  // column header
  const Grid& g = field.grid();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != d + 3)
      throw std::runtime_error("read_snapshot: malformed row '" + line + "'");
    std::array<int, 3> k{0, 0, 0};
    for (int a = 0; a < d; ++a) k[a] = std::stoi(cells[a]);
    const int comp = std::stoi(cells[d]);
    field.coefficients()(g.point_of(k), comp) =
        std::complex<double>(std::stod(cells[d + 1]), std::stod(cells[d + 2]));
  }
  return field;
}

}  // namespace diraclab
