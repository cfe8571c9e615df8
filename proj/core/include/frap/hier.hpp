#pragma once

#include <Eigen/Dense>
#include <vector>

#include "frap/model.hpp"

namespace frap {

// K x m weight matrix whose columns live on the probability simplex.
class MembershipMatrix {
 public:
  explicit MembershipMatrix(Eigen::MatrixXd omega);
  const Eigen::MatrixXd& value() const { return omega_; }
  int classes() const { return static_cast<int>(omega_.rows()); }
  int members() const { return static_cast<int>(omega_.cols()); }

 private:
  Eigen::MatrixXd omega_;
};

// Three-class benchmark generator: each unit gets a uniform label, bivariate
// normal scores centered at (3,0), (0,3) or (0,0), and logistic-normal
// weights w = (e^{x1}, e^{x2}, 1) / (1 + e^{x1} + e^{x2}).
struct MembershipDraw {
  MembershipMatrix omega;
  std::vector<int> labels;  // 1-based generator labels
};
MembershipDraw simulate_membership(int members, Rng& rng);

// Mixed trend of one unit: profiles is (n+1) x K of class profile values on
// the grid, weights a simplex column.
Eigen::VectorXd combined_trend(const Eigen::MatrixXd& profiles,
                               const Eigen::VectorXd& weights);

// One panel per unit, each simulated from its mixed trend.
std::vector<BinaryPanel> hier_simulate(const Eigen::MatrixXd& profiles,
                                       const MembershipMatrix& omega, Hurst h,
                                       double tau, int replicates,
                                       const TimeGrid& grid, Rng& rng);

struct HierSamples {
  TimeGrid grid{0.0, 1.0, 1};
  int classes = 0, members = 0;
  std::vector<double> hurst, tau;
  std::vector<Eigen::MatrixXd> g;      // n x K per retained draw
  std::vector<Eigen::MatrixXd> omega;  // K x m per retained draw
  Eigen::MatrixXd sigma, phi;          // K x kept
  double accept_beta = 0.0;
  Eigen::VectorXd accept_eta;  // per class
  long iterations = 0, burn_in = 0;
  int thin = 1;
  std::uint64_t seed = 0;
  double nu = 1e-3;

  int size() const { return static_cast<int>(hurst.size()); }
  int n() const { return g.empty() ? 0 : static_cast<int>(g.front().rows()); }
  Eigen::MatrixXd omega_mean() const;
  Eigen::MatrixXd g_mean() const;
};

// Grade-of-membership extension: every unit's trend is a simplex-weighted mix
// of K latent class profiles sharing one Hurst exponent and scale.  All
// panels must share the grid and replicate count.
HierSamples hier_fit(const std::vector<BinaryPanel>& panels, int classes,
                     const FrapPriors& priors, const McmcConfig& mcmc);

// Deviance information criterion with orthant probabilities estimated by GHK
// importance sampling; probabilities are floored at 1e-300 before the log and
// `floored` counts how often the floor engaged.
struct DicResult {
  double dic;
  double d_bar;
  double d_hat;
  long floored;
};
DicResult dic(const HierSamples& samples,
              const std::vector<BinaryPanel>& panels, int ghk_draws, Rng& rng);

// Best column-permutation alignment of an estimated membership matrix to a
// reference, minimizing the mean absolute entry difference (K! search).
struct ColumnMatch {
  std::vector<int> perm;  // estimate row perm[k] aligns with reference row k
  double mean_abs_error;
};
ColumnMatch match_columns(const Eigen::MatrixXd& estimate,
                          const Eigen::MatrixXd& reference);

}  // namespace frap
