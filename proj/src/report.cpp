#include "diraclab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

namespace diraclab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

FitResult fit_rate(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_rate: x and y differ in length");
  std::vector<double> lx, ly;
  FitResult r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
      ++r.excluded;
      continue;
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) throw std::invalid_argument("fit_rate: fewer than two positive points");
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_rate: all parameters are equal");
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  for (std::size_t i = 0; i < lx.size(); ++i)
    r.residual = std::max(r.residual, std::abs(ly[i] - (r.intercept + r.slope * lx[i])));
  r.points = static_cast<int>(lx.size());
  return r;
}

void ExperimentReport::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : meta_) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  meta_.emplace_back(key, value);
}

void ExperimentReport::add(double parameter, const std::string& quantity, double value) {
  rows_.push_back({parameter, quantity, value});
}

const FitResult& ExperimentReport::fit(const std::string& quantity) {
  FitResult r = fit_rate(parameters(quantity), values(quantity));
  for (auto& f : fits_) {
    if (f.quantity == quantity) {
      f.result = r;
      return f.result;
    }
  }
  fits_.push_back({quantity, r});
  return fits_.back().result;
}

std::string ExperimentReport::meta(const std::string& key) const {
  for (const auto& kv : meta_)
    if (kv.first == key) return kv.second;
  return {};
}

std::vector<double> ExperimentReport::parameters(const std::string& quantity) const {
  std::vector<double> out;
  for (const auto& r : rows_)
    if (r.quantity == quantity) out.push_back(r.parameter);
  return out;
}

std::vector<double> ExperimentReport::values(const std::string& quantity) const {
  std::vector<double> out;
  for (const auto& r : rows_)
    if (r.quantity == quantity) out.push_back(r.value);
  return out;
}

double ExperimentReport::value(double parameter, const std::string& quantity) const {
  for (const auto& r : rows_)
    if (r.quantity == quantity && r.parameter == parameter) return r.value;
  throw std::out_of_range("ExperimentReport: no row for " + quantity + " at " + format_double(parameter));
}

void ExperimentReport::write_csv(std::ostream& out) const {
  for (const auto& kv : meta_) out << "# " << kv.first << ": " << kv.second << "\n";
  out << "parameter,quantity,value\n";
  for (const auto& r : rows_)
    out << format_double(r.parameter) << "," << r.quantity << "," << format_double(r.value) << "\n";
}

void ExperimentReport::write_fit_csv(std::ostream& out) const {
  out << "quantity,slope,residual,points\n";
  for (const auto& f : fits_)
    out << f.quantity << "," << format_double(f.result.slope) << "," << format_double(f.result.residual)
        << "," << f.result.points << "\n";
}

void ExperimentReport::write_svg(std::ostream& out, const std::vector<std::string>& quantities) const {
  constexpr double W = 640, H = 420, pad = 60;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& q : quantities) {
    const auto xs = parameters(q), ys = values(q);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(xs[i] > 0) || !(ys[i] > 0)) continue;
      x0 = std::min(x0, std::log10(xs[i]));
      x1 = std::max(x1, std::log10(xs[i]));
      y0 = std::min(y0, std::log10(ys[i]));
      y1 = std::max(y1, std::log10(ys[i]));
    }
  }
  if (!(x1 >= x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  auto px = [&](double lx) { return pad + (lx - x0) / (x1 - x0) * (W - 2 * pad); };
  auto py = [&](double ly) { return H - pad - (ly - y0) / (y1 - y0) * (H - 2 * pad); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\""
      << H - 2 * pad << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << name_
      << " (log10-log10)</text>\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x0);
  out << "<text x=\"" << pad << "\" y=\"" << H - pad + 18 << "\" font-size=\"11\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.2f", x1);
  out << "<text x=\"" << W - pad << "\" y=\"" << H - pad + 18 << "\" font-size=\"11\" text-anchor=\"end\">"
      << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.2f", y0);
  out << "<text x=\"" << pad - 6 << "\" y=\"" << H - pad << "\" font-size=\"11\" text-anchor=\"end\">" << buf
      << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.2f", y1);
  out << "<text x=\"" << pad - 6 << "\" y=\"" << pad + 10 << "\" font-size=\"11\" text-anchor=\"end\">"
      << buf << "</text>\n";
  for (std::size_t k = 0; k < quantities.size(); ++k) {
    const auto xs = parameters(quantities[k]), ys = values(quantities[k]);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (xs[i] > 0 && ys[i] > 0) pts.emplace_back(std::log10(xs[i]), std::log10(ys[i]));
    std::sort(pts.begin(), pts.end());
    const char* color = colors[k % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(p.first), py(p.second));
      out << buf;
    }
    out << "\"/>\n";
    for (const auto& p : pts) {
      std::snprintf(buf, sizeof buf, "%.2f", px(p.first));
      out << "<circle cx=\"" << buf;
      std::snprintf(buf, sizeof buf, "%.2f", py(p.second));
      out << "\" cy=\"" << buf << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << W - pad - 4 << "\" y=\"" << pad + 16 + 14 * k << "\" font-size=\"11\" fill=\""
        << color << "\" text-anchor=\"end\">" << quantities[k] << "</text>\n";
  }
  out << "</svg>\n";
}

void ExperimentReport::save(const std::string& dir, bool svg) const {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base = std::filesystem::path(dir) / name_;
  {
    std::ofstream f(base.string() + ".csv");
    if (!f) throw std::runtime_error("cannot write " + base.string() + ".csv");
    write_csv(f);
  }
  {
    std::ofstream f(base.string() + "_fit.csv");
    if (!f) throw std::runtime_error("cannot write " + base.string() + "_fit.csv");
    write_fit_csv(f);
  }
  if (svg) {
    std::set<std::string> seen;
    std::vector<std::string> qs;
    for (const auto& r : rows_)
      if (seen.insert(r.quantity).second) qs.push_back(r.quantity);
    std::ofstream f(base.string() + ".svg");
    if (!f) throw std::runtime_error("cannot write " + base.string() + ".svg");
    write_svg(f, qs);
  }
}

}  // namespace diraclab
