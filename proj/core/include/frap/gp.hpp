#pragma once

#include <Eigen/Dense>
#include <vector>

namespace frap {

// Squared-exponential hyperparameters at unit overall scale: the model's
// global scale tau^2 multiplies the whole kernel outside this struct.
// nu is a diagonal jitter applied where two points coincide exactly.
struct GpHyper {
  GpHyper(double sigma, double phi, double nu = 1e-3);
  double sigma;  // marginal sd
  double phi;    // length scale
  double nu;     // nugget / jitter
};

// C(s,t) = sigma^2 exp(-(s-t)^2 / (2 phi^2)) + nu 1{s == t}.
Eigen::MatrixXd gp_kernel_matrix(const std::vector<double>& points,
                                 const GpHyper& hyper);

// Cross-kernel between two point sets under the same convention (the jitter
// appears wherever a pair of points coincides exactly).
Eigen::MatrixXd gp_cross_kernel(const std::vector<double>& a,
                                const std::vector<double>& b,
                                const GpHyper& hyper);

// Gaussian conditional of the zero-mean process at test points given values
// at train points: mean K*^T C^-1 f and covariance C** - K*^T C^-1 K*
// (Rasmussen & Williams eq. 2.22-2.24 at unit scale).
struct GpConditional {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};
GpConditional gp_conditional(const std::vector<double>& train_points,
                             const Eigen::VectorXd& train_values,
                             const std::vector<double>& test_points,
                             const GpHyper& hyper);

}  // namespace frap
