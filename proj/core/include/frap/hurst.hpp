#pragma once

#include <Eigen/Dense>
#include <vector>

namespace frap {

// Ordered block sizes for scaling regressions.  At least 4 scales, each
// between 4 and half the series length, strictly increasing.
class ScaleGrid {
 public:
  ScaleGrid(std::vector<int> scales, int series_length);
  // Powers of two from 8 up to series_length/4.
  static ScaleGrid dyadic(int series_length);
  const std::vector<int>& scales() const { return scales_; }

 private:
  std::vector<int> scales_;
};

// Rescaled-range statistic at one block size: per non-overlapping block,
// range of cumulative mean deviations over the population sd, averaged across
// blocks.  Zero-variance blocks are skipped; all-degenerate input throws.
double rs_statistic(const Eigen::VectorXd& series, int scale);

// Detrended-fluctuation statistic at one block size.  The mean-centered
// series is integrated into a profile; per non-overlapping window a
// polynomial is fit by least squares and F(scale) is the pooled RMS residual.
// `poly_degree` is the order of deterministic trend removed from the original
// series, so the profile fit uses degree poly_degree + 1 (a degree-d series
// trend integrates to a degree-(d+1) profile component).
double dfa_fluctuation(const Eigen::VectorXd& series, int scale,
                       int poly_degree);

// Log-log OLS slopes of the scaling statistics; the slope estimates H.
double estimate_hurst_rs(const Eigen::VectorXd& series, const ScaleGrid& grid);
double estimate_hurst_dfa(const Eigen::VectorXd& series, const ScaleGrid& grid,
                          int poly_degree);

// Slope of the least-squares line of y on x.  Exposed because the scaling
// regressions and their tests share it.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace frap
