#pragma once

// Tabular experiment records and their CSV/SVG serialisation.
//
// Report CSV:
//   # <key>: <value>          metadata lines
//   parameter,quantity,value
//   <p>,<name>,<v>            doubles printed with %.17g
// Fit CSV (<name>_fit.csv):
//   quantity,slope,residual,points

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace diraclab {

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // max |log y - fit| over used points
  int points = 0;
  int excluded = 0;     // nonpositive measurements dropped
};

/// Least-squares slope of log(y) against log(x). Nonpositive or non-finite
/// points are dropped (counted in `excluded`); throws std::invalid_argument
/// when fewer than two points remain.
FitResult fit_rate(const std::vector<double>& x, const std::vector<double>& y);

std::string format_double(double v);

class ExperimentReport {
 public:
  struct Row {
    double parameter;
    std::string quantity;
    double value;
  };
  struct Fit {
    std::string quantity;
    FitResult result;
  };

  explicit ExperimentReport(std::string name = "report") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_meta(const std::string& key, const std::string& value);
  void set_meta(const std::string& key, double value) { set_meta(key, format_double(value)); }
  void add(double parameter, const std::string& quantity, double value);
  /// Fits `quantity` against its parameters and stores the result.
  const FitResult& fit(const std::string& quantity);

  const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Fit>& fits() const { return fits_; }
  std::string meta(const std::string& key) const;
  std::vector<double> parameters(const std::string& quantity) const;
  std::vector<double> values(const std::string& quantity) const;
  double value(double parameter, const std::string& quantity) const;

  void write_csv(std::ostream& out) const;
  void write_fit_csv(std::ostream& out) const;
  /// Log-log line plot of the listed quantities (nonpositive values skipped).
  void write_svg(std::ostream& out, const std::vector<std::string>& quantities) const;
  /// Writes <dir>/<name>.csv, <dir>/<name>_fit.csv and optionally <dir>/<name>.svg.
  void save(const std::string& dir, bool svg) const;

 private:
  std::string name_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<Row> rows_;
  std::vector<Fit> fits_;
};

}  // namespace diraclab
