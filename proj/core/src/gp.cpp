#include "frap/gp.hpp"

#include <cmath>
#include <stdexcept>

namespace frap {

GpHyper::GpHyper(double sigma_, double phi_, double nu_)
    : sigma(sigma_), phi(phi_), nu(nu_) {
  if (!(sigma > 0.0)) throw std::invalid_argument("GpHyper: sigma must be > 0");
  if (!(phi > 0.0)) throw std::invalid_argument("GpHyper: phi must be > 0");
  if (!(nu >= 0.0)) throw std::invalid_argument("GpHyper: nu must be >= 0");
}

Eigen::MatrixXd gp_cross_kernel(const std::vector<double>& a,
                                const std::vector<double>& b,
                                const GpHyper& hyper) {
  const double s2 = hyper.sigma * hyper.sigma;
  const double inv2phi2 = 1.0 / (2.0 * hyper.phi * hyper.phi);
  Eigen::MatrixXd k(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      const double d = a[i] - b[j];
      k(i, j) = s2 * std::exp(-d * d * inv2phi2);
      if (a[i] == b[j]) k(i, j) += hyper.nu;
    }
  }
  return k;
}

Eigen::MatrixXd gp_kernel_matrix(const std::vector<double>& points,
                                 const GpHyper& hyper) {
  if (points.empty())
    throw std::invalid_argument("gp_kernel_matrix: empty point set");
  return gp_cross_kernel(points, points, hyper);
}

GpConditional gp_conditional(const std::vector<double>& train_points,
                             const Eigen::VectorXd& train_values,
                             const std::vector<double>& test_points,
                             const GpHyper& hyper) {
  if (train_values.size() != static_cast<Eigen::Index>(train_points.size()))
    throw std::invalid_argument("gp_conditional: train size mismatch");
  const Eigen::MatrixXd c = gp_kernel_matrix(train_points, hyper);
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("gp_conditional: train kernel not PD");
  const Eigen::MatrixXd kstar = gp_cross_kernel(train_points, test_points, hyper);
  const Eigen::MatrixXd cstar = gp_kernel_matrix(test_points, hyper);
  GpConditional out;
  out.mean = kstar.transpose() * llt.solve(train_values);
  out.cov = cstar - kstar.transpose() * llt.solve(kstar);
  return out;
}

}  // namespace frap
