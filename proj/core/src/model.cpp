#include "frap/model.hpp"

#include <cmath>
#include <stdexcept>

#include "frap/mathutil.hpp"

namespace frap {

BinaryPanel::BinaryPanel(Eigen::MatrixXi data_, TimeGrid grid_)
    : data(std::move(data_)), grid(grid_) {
  if (data.rows() < 1)
    throw std::invalid_argument("BinaryPanel: need at least one replicate");
  if (data.cols() < 2)
    throw std::invalid_argument("BinaryPanel: need at least two intervals");
  if (data.cols() != grid.n)
    throw std::invalid_argument("BinaryPanel: grid length mismatch");
  for (Eigen::Index r = 0; r < data.rows(); ++r)
    for (Eigen::Index i = 0; i < data.cols(); ++i)
      if (data(r, i) != 0 && data(r, i) != 1)
        throw std::invalid_argument("BinaryPanel: entries must be 0/1");
}

Eigen::VectorXd PosteriorSamples::f_over_tau_mean() const {
  if (size() == 0) throw std::runtime_error("PosteriorSamples: empty");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(n());
  for (int l = 0; l < size(); ++l) {
    double cum = 0.0;
    for (int i = 0; i < n(); ++i) {
      cum += g(i, l);
      acc[i] += cum / tau[l];
    }
  }
  return acc / size();
}

Eigen::MatrixXd build_difference_matrix(int n) {
  if (n < 1) throw std::invalid_argument("build_difference_matrix: n >= 1");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    a(i, i) = 1.0;
    a(i, i - 1) = -1.0;
  }
  return a;
}

std::function<double(double)> trend_function(int id) {
  switch (id) {
    case 1:
      return [](double t) { return std::sin(4.0 * M_PI * t / 90.0); };
    case 2:
      return [](double t) {
        return 5.0 / (1.0 + std::exp(-2.5 * (t - 45.0) / 15.0));
      };
    case 3:
      return [](double t) {
        const double u = (t - 45.0) / 45.0;
        return -2.0 * u * u + 2.0;
      };
    case 4:
      return [](double t) {
        const double u = (t - 45.0) / 45.0;
        return -1.2 * u + 0.5 * std::cos(3.0 * M_PI * t / 90.0) - 1.7;
      };
    case 5:
      return [](double t) {
        const double f1 = std::sin(4.0 * M_PI * t / 90.0);
        const double f2 = 5.0 / (1.0 + std::exp(-2.5 * (t - 45.0) / 15.0));
        return 0.1 * f1 * std::log(f2);
      };
    default:
      throw std::invalid_argument("trend_function: id must be 1..5");
  }
}

Eigen::VectorXd eval_on_grid(const std::function<double(double)>& f,
                             const TimeGrid& grid) {
  Eigen::VectorXd v(grid.n + 1);
  for (int i = 0; i <= grid.n; ++i) v[i] = f(grid.point(i));
  return v;
}

BinaryPanel frap_simulate(const Eigen::VectorXd& f_values, Hurst h, double tau,
                          int replicates, const TimeGrid& grid, Rng& rng) {
  if (f_values.size() != grid.n + 1)
    throw std::invalid_argument("frap_simulate: f_values must have n+1 entries");
  if (!(tau > 0.0)) throw std::invalid_argument("frap_simulate: tau must be > 0");
  if (replicates < 1)
    throw std::invalid_argument("frap_simulate: need at least one replicate");
  const int n = grid.n;
  Eigen::VectorXd incr(n);
  for (int i = 0; i < n; ++i) incr[i] = f_values[i + 1] - f_values[i];
  Eigen::MatrixXi z(replicates, n);
  for (int r = 0; r < replicates; ++r) {
    const Eigen::VectorXd eps = simulate_fgn(n, h, rng);
    for (int i = 0; i < n; ++i)
      z(r, i) = incr[i] + tau * eps[i] > 0.0 ? 1 : 0;
  }
  return BinaryPanel(std::move(z), grid);
}

Eigen::VectorXd marginal_prob(const Eigen::VectorXd& f_over_tau) {
  if (f_over_tau.size() < 2)
    throw std::invalid_argument("marginal_prob: need at least two values");
  Eigen::VectorXd p(f_over_tau.size() - 1);
  for (Eigen::Index i = 0; i + 1 < f_over_tau.size(); ++i)
    p[i] = norm_cdf(f_over_tau[i + 1] - f_over_tau[i]);
  return p;
}

std::vector<ScaleStat> scale_statistics(const Eigen::MatrixXi& panel,
                                        const std::vector<int>& scales) {
  const int n = static_cast<int>(panel.cols());
  const int reps = static_cast<int>(panel.rows());
  std::vector<ScaleStat> out;
  for (int scale : scales) {
    if (scale < 1) throw std::invalid_argument("scale_statistics: scale >= 1");
    const int nblocks = n / scale;
    if (nblocks < 2)
      throw std::invalid_argument(
          "scale_statistics: scale must fit at least twice");
    long ones = 0, prev1 = 0, both1 = 0;
    for (int r = 0; r < reps; ++r) {
      int prev = -1;
      for (int b = 0; b < nblocks; ++b) {
        int cur = 0;
        for (int i = b * scale; i < (b + 1) * scale; ++i)
          if (panel(r, i) == 1) {
            cur = 1;
            break;
          }
        ones += cur;
        if (prev == 1) {
          ++prev1;
          both1 += cur;
        }
        prev = cur;
      }
    }
    ScaleStat s;
    s.scale = scale;
    s.marginal = static_cast<double>(ones) /
                 (static_cast<double>(nblocks) * reps);
    if (prev1 > 0)
      s.conditional = static_cast<double>(both1) / static_cast<double>(prev1);
    out.push_back(std::move(s));
  }
  return out;
}

double remse(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth) {
  if (estimate.size() != truth.size() || truth.size() == 0)
    throw std::invalid_argument("remse: size mismatch");
  const double denom = truth.squaredNorm();
  if (denom == 0.0)
    throw std::invalid_argument("remse: reference curve is identically zero");
  return (estimate - truth).squaredNorm() / denom;
}

Eigen::VectorXd smooth_curve(const Eigen::VectorXd& series, int window) {
  if (window < 1 || window % 2 == 0)
    throw std::invalid_argument("smooth_curve: window must be odd and >= 1");
  const int n = static_cast<int>(series.size());
  const int half = window / 2;
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    out[i] = series.segment(lo, hi - lo + 1).mean();
  }
  return out;
}

}  // namespace frap
