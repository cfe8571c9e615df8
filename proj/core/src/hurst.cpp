#include "frap/hurst.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace frap {

ScaleGrid::ScaleGrid(std::vector<int> scales, int series_length)
    : scales_(std::move(scales)) {
  if (scales_.size() < 4)
    throw std::invalid_argument("ScaleGrid: need at least 4 scales");
  int prev = 0;
  for (int s : scales_) {
    if (s < 4) throw std::invalid_argument("ScaleGrid: scales must be >= 4");
    if (s <= prev)
      throw std::invalid_argument("ScaleGrid: scales must be increasing");
    if (s > series_length / 2)
      throw std::invalid_argument("ScaleGrid: scale exceeds half the series");
    prev = s;
  }
}

ScaleGrid ScaleGrid::dyadic(int series_length) {
  std::vector<int> s;
  for (int m = 8; m <= series_length / 4; m *= 2) s.push_back(m);
  return ScaleGrid(std::move(s), series_length);
}

double rs_statistic(const Eigen::VectorXd& series, int scale) {
  const int n = static_cast<int>(series.size());
  if (scale < 4 || scale > n / 2)
    throw std::invalid_argument("rs_statistic: scale out of range");
  const int nblocks = n / scale;
  double total = 0.0;
  int used = 0;
  for (int b = 0; b < nblocks; ++b) {
    const auto x = series.segment(b * scale, scale);
    const double mean = x.mean();
    double cum = 0.0, lo = 0.0, hi = 0.0, ss = 0.0;
    for (int i = 0; i < scale; ++i) {
      const double d = x[i] - mean;
      cum += d;
      lo = std::min(lo, cum);
      hi = std::max(hi, cum);
      ss += d * d;
    }
    const double sd = std::sqrt(ss / scale);
    if (sd == 0.0) continue;  // constant block carries no range information
    total += (hi - lo) / sd;
    ++used;
  }
  if (used == 0)
    throw std::runtime_error("rs_statistic: every block has zero variance");
  return total / used;
}

double dfa_fluctuation(const Eigen::VectorXd& series, int scale,
                       int poly_degree) {
  const int n = static_cast<int>(series.size());
  if (poly_degree < 0)
    throw std::invalid_argument("dfa_fluctuation: poly_degree must be >= 0");
  if (scale < poly_degree + 2 || scale > n / 2)
    throw std::invalid_argument("dfa_fluctuation: scale out of range");

  Eigen::VectorXd profile(n);
  const double mean = series.mean();
  double cum = 0.0;
  for (int i = 0; i < n; ++i) {
    cum += series[i] - mean;
    profile[i] = cum;
  }

  const int fit_degree = poly_degree + 1;
  // Vandermonde basis on local window coordinates, shared by all windows.
  Eigen::MatrixXd basis(scale, fit_degree + 1);
  for (int i = 0; i < scale; ++i) {
    double p = 1.0;
    for (int d = 0; d <= fit_degree; ++d) {
      basis(i, d) = p;
      p *= (static_cast<double>(i) / scale);  // scaled for conditioning
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);

  const int nwin = n / scale;
  double ss = 0.0;
  for (int w = 0; w < nwin; ++w) {
    const Eigen::VectorXd y = profile.segment(w * scale, scale);
    const Eigen::VectorXd resid = y - basis * qr.solve(y);
    ss += resid.squaredNorm();
  }
  return std::sqrt(ss / (static_cast<double>(nwin) * scale));
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("ols_slope: need matching inputs of size >= 2");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_slope: degenerate abscissa");
  return sxy / sxx;
}

namespace {

// The log-log regression needs strictly positive, finite statistics at every
// scale; a constant (or perfectly detrendable) series violates that.
double checked_log(double stat, const char* who) {
  if (!std::isfinite(stat) || stat <= 0.0)
    throw std::runtime_error(std::string(who) +
                             ": scale statistic is not positive; series "
                             "carries no fluctuation at some scale");
  return std::log(stat);
}

}  // namespace

double estimate_hurst_rs(const Eigen::VectorXd& series, const ScaleGrid& grid) {
  std::vector<double> lx, ly;
  for (int s : grid.scales()) {
    lx.push_back(std::log(static_cast<double>(s)));
    ly.push_back(checked_log(rs_statistic(series, s), "estimate_hurst_rs"));
  }
  return ols_slope(lx, ly);
}

double estimate_hurst_dfa(const Eigen::VectorXd& series, const ScaleGrid& grid,
                          int poly_degree) {
  std::vector<double> lx, ly;
  for (int s : grid.scales()) {
    lx.push_back(std::log(static_cast<double>(s)));
    ly.push_back(
        checked_log(dfa_fluctuation(series, s, poly_degree), "estimate_hurst_dfa"));
  }
  return ols_slope(lx, ly);
}

}  // namespace frap
