#include "frap/longmem.hpp"

#include <cmath>
#include <stdexcept>

namespace frap {

namespace {

// asin with a guard for arguments pushed just outside [-1,1] by rounding.
double clamped_asin(double x) {
  if (x > 1.0) {
    if (x > 1.0 + 1e-12) throw std::invalid_argument("asin argument > 1");
    x = 1.0;
  } else if (x < -1.0) {
    if (x < -1.0 - 1e-12) throw std::invalid_argument("asin argument < -1");
    x = -1.0;
  }
  return std::asin(x);
}

}  // namespace

Hurst::Hurst(double value) : value_(value) {
  if (!(value > 0.0 && value < 1.0))
    throw std::invalid_argument("Hurst exponent must lie in (0,1)");
}

TimeGrid::TimeGrid(double t0_, double delta_, int n_)
    : t0(t0_), delta(delta_), n(n_) {
  if (!(delta > 0.0)) throw std::invalid_argument("TimeGrid: delta must be > 0");
  if (n < 1) throw std::invalid_argument("TimeGrid: need at least one step");
}

double fbm_cov(double s, double t, Hurst h) {
  const double two_h = 2.0 * h.value();
  return 0.5 * (std::pow(std::fabs(t), two_h) + std::pow(std::fabs(s), two_h) -
                std::pow(std::fabs(t - s), two_h));
}

double fgn_autocov(int k, Hurst h) {
  const double two_h = 2.0 * h.value();
  const double a = std::abs(k);
  return 0.5 * (std::pow(a + 1.0, two_h) - 2.0 * std::pow(a, two_h) +
                std::pow(std::fabs(a - 1.0), two_h));
}

Eigen::MatrixXd fgn_cov_matrix(int n, Hurst h) {
  if (n < 1) throw std::invalid_argument("fgn_cov_matrix: n must be >= 1");
  Eigen::VectorXd gamma(n);
  for (int k = 0; k < n; ++k) gamma[k] = fgn_autocov(k, h);
  Eigen::MatrixXd sigma(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sigma(i, j) = gamma[std::abs(i - j)];
  return sigma;
}

Eigen::MatrixXd fgn_cholesky(int n, Hurst h) {
  Eigen::LLT<Eigen::MatrixXd> llt(fgn_cov_matrix(n, h));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("fgn_cholesky: covariance not positive definite");
  return llt.matrixL();
}

Eigen::VectorXd simulate_fgn(int n, Hurst h, Rng& rng) {
  if (n < 1) throw std::invalid_argument("simulate_fgn: n must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd gamma(n);
  for (int k = 0; k < n; ++k) gamma[k] = fgn_autocov(k, h);

  Eigen::VectorXd x(n);
  x[0] = gauss(rng);  // gamma(0) = 1
  if (n == 1) return x;

  // One-step prediction coefficients phi_{k,1..k} via the Levinson-Durbin
  // recursion; v is the innovation variance.  Coefficients are stored in
  // reversed order (s[i] = phi_{k,k-i}) so that the prediction sum, the
  // reflection sum and the coefficient update are all contiguous vector
  // operations -- the recursion then matches the dense lower-Cholesky draw
  // exactly while using O(n) memory.
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd s_next(n);
  double v = 1.0;
  for (int k = 1; k < n; ++k) {
    const double acc =
        gamma[k] - (k > 1 ? s.head(k - 1).dot(gamma.segment(1, k - 1)) : 0.0);
    const double kappa = acc / v;
    s_next[0] = kappa;
    if (k > 1)
      s_next.segment(1, k - 1) =
          s.head(k - 1) - kappa * s.head(k - 1).reverse();
    s.swap(s_next);
    v *= (1.0 - kappa * kappa);
    if (!(v > 0.0))
      throw std::runtime_error("simulate_fgn: prediction variance collapsed");
    x[k] = s.head(k).dot(x.head(k)) + std::sqrt(v) * gauss(rng);
  }
  return x;
}

Eigen::VectorXd simulate_fbm_path(const TimeGrid& grid, Hurst h, Rng& rng) {
  const double scale = std::pow(grid.delta, h.value());
  Eigen::VectorXd incr = simulate_fgn(grid.n, h, rng);
  Eigen::VectorXd path(grid.n + 1);
  path[0] = 0.0;
  for (int i = 0; i < grid.n; ++i) path[i + 1] = path[i] + scale * incr[i];
  return path;
}

Eigen::VectorXi threshold_to_binary(const Eigen::VectorXd& x) {
  Eigen::VectorXi z(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) z[i] = x[i] > 0.0 ? 1 : 0;
  return z;
}

double binary_acf(int k, Hurst h) {
  return clamped_asin(fgn_autocov(k, h)) / (2.0 * M_PI);
}

double conditional_persistence(Hurst h) {
  const double rho = std::pow(2.0, 2.0 * h.value() - 1.0) - 1.0;
  return 0.5 + clamped_asin(rho) / M_PI;
}

Eigen::VectorXi aggregate_increment_signs(const Eigen::VectorXd& path,
                                          int block) {
  if (block < 1)
    throw std::invalid_argument("aggregate_increment_signs: block must be >= 1");
  const Eigen::Index nblocks = (path.size() - 1) / block;
  if (nblocks < 1)
    throw std::invalid_argument("aggregate_increment_signs: path too short");
  Eigen::VectorXi z(nblocks);
  for (Eigen::Index i = 0; i < nblocks; ++i)
    z[i] = path[(i + 1) * block] - path[i * block] > 0.0 ? 1 : 0;
  return z;
}

double empirical_conditional_persistence(const Eigen::VectorXi& z) {
  long n1 = 0, n11 = 0;
  for (Eigen::Index i = 0; i + 1 < z.size(); ++i) {
    if (z[i] == 1) {
      ++n1;
      if (z[i + 1] == 1) ++n11;
    }
  }
  if (n1 == 0)
    throw std::runtime_error(
        "empirical_conditional_persistence: no 1 with a successor");
  return static_cast<double>(n11) / static_cast<double>(n1);
}

SpectralBound binary_spectral_lower_bound(double lambda, Hurst h,
                                          int truncation) {
  if (truncation < 0)
    throw std::invalid_argument("binary_spectral_lower_bound: truncation < 0");
  double s_bin = binary_acf(0, h);
  double s_fgn = fgn_autocov(0, h);
  for (int k = 1; k <= truncation; ++k) {
    const double c = std::cos(k * lambda);
    s_bin += 2.0 * c * binary_acf(k, h);
    s_fgn += 2.0 * c * fgn_autocov(k, h);
  }
  return {s_bin, s_fgn};
}

}  // namespace frap
