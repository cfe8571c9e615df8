#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "frap/rng.hpp"

namespace frap {

// Hurst exponent restricted to the open interval (0,1); the endpoints are
// degenerate (H=1 gives a singular increment law) and are rejected.
class Hurst {
 public:
  explicit Hurst(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Equally spaced observation times t_i = t0 + i*delta, i = 0..n.
struct TimeGrid {
  TimeGrid(double t0, double delta, int n);
  double point(int i) const { return t0 + i * delta; }
  double t0;
  double delta;
  int n;  // number of increments; the grid has n+1 points
};

// Covariance of fractional Brownian motion, E[B_H(s) B_H(t)].
double fbm_cov(double s, double t, Hurst h);

// Lag-k autocovariance of unit-spacing fractional Gaussian noise.  Unit
// variance at lag 0; symmetric in k.
double fgn_autocov(int k, Hurst h);

// n x n Toeplitz covariance of consecutive unit-spacing fGN increments.
Eigen::MatrixXd fgn_cov_matrix(int n, Hurst h);

// Lower Cholesky factor of fgn_cov_matrix.  Throws std::runtime_error if the
// factorization fails, which signals a numerically non-PD covariance.
Eigen::MatrixXd fgn_cholesky(int n, Hurst h);

// Exact draw of n fGN increments.  Uses the Levinson-Durbin one-step
// prediction recursion (Hosking's method), which applies the lower Cholesky
// factor of the Toeplitz covariance to iid standard normals without forming
// the matrix, so long series (2^17 and beyond) stay in O(n) memory.
Eigen::VectorXd simulate_fgn(int n, Hurst h, Rng& rng);

// fBM path sampled on the grid: n+1 values starting at exactly 0, obtained by
// accumulating delta^H-scaled fGN increments.
Eigen::VectorXd simulate_fbm_path(const TimeGrid& grid, Hurst h, Rng& rng);

// 0/1 indicators of strictly positive entries.
Eigen::VectorXi threshold_to_binary(const Eigen::VectorXd& x);

// Lag-k autocovariance of the thresholded series 1{eps_i > 0} for unit fGN:
// arcsine law (1/2pi) * asin(rho_eps(k)).
double binary_acf(int k, Hurst h);

// P(next aggregated increment positive | current one positive) for fBM sign
// indicators aggregated over dyadic blocks; free of the block size.
double conditional_persistence(Hurst h);

// Sign indicators of path increments taken over blocks of `block` steps:
// out_i = 1{X_{i*block} - X_{(i-1)*block} > 0}.  `path` holds X_0..X_N.
Eigen::VectorXi aggregate_increment_signs(const Eigen::VectorXd& path,
                                          int block);

// Empirical P(z_{i+1}=1 | z_i=1) over consecutive pairs of a binary series.
// Throws if the series has no 1 followed by another observation.
double empirical_conditional_persistence(const Eigen::VectorXi& z);

// Symmetrically truncated spectral density sums at frequency lambda,
// sum_{|k|<=truncation} acf(k) cos(k lambda), for the thresholded series and
// for the underlying fGN.  For H > 1/2 the first dominates the second/(2pi).
struct SpectralBound {
  double s_binary;
  double s_fgn;
};
SpectralBound binary_spectral_lower_bound(double lambda, Hurst h,
                                          int truncation);

}  // namespace frap
