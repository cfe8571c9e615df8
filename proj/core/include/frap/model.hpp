#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "frap/gp.hpp"
#include "frap/longmem.hpp"
#include "frap/rng.hpp"
#include "frap/samplers.hpp"

namespace frap {

// R binary replicate series observed on one grid (rows = replicates).
struct BinaryPanel {
  BinaryPanel(Eigen::MatrixXi data, TimeGrid grid);
  int replicates() const { return static_cast<int>(data.rows()); }
  int length() const { return static_cast<int>(data.cols()); }
  Eigen::MatrixXi data;
  TimeGrid grid;
};

// Inverse-gamma prior on tau^2 plus the standard-normal prior scales of the
// logistic-Hurst and log-GP random walks; lambda scales the Gaussian prior of
// the membership weights in the hierarchical model.
struct FrapPriors {
  double a_tau = 2.0;
  double b_tau = 0.1;
  double beta_prior_sd = 1.0;
  double eta_prior_sd = 1.0;
  double lambda = 1.0;
};

struct McmcConfig {
  long iterations = 4000;
  long burn_in = -1;  // -1 resolves to iterations/2
  int thin = 1;
  std::uint64_t seed = 1;
  int latent_sweeps = 2;   // truncated-MVN Gibbs sweeps per iteration
  int adapt_interval = 50;
  double target_accept = 0.3;
  double initial_scale = 0.5;
  double nu = 1e-3;  // GP jitter, held fixed while fitting
  long resolved_burn_in() const {
    return burn_in >= 0 ? burn_in : iterations / 2;
  }
};

struct PosteriorSamples {
  TimeGrid grid{0.0, 1.0, 1};
  std::vector<double> hurst, tau, sigma, phi;
  Eigen::MatrixXd g;  // n x kept, trend increments per retained draw
  double accept_beta = 0.0, accept_eta = 0.0;
  long iterations = 0, burn_in = 0;
  int thin = 1;
  std::uint64_t seed = 0;
  double nu = 1e-3;

  int size() const { return static_cast<int>(hurst.size()); }
  int n() const { return static_cast<int>(g.rows()); }
  // Pointwise posterior mean of the normalized trend cumsum(g)/tau.
  Eigen::VectorXd f_over_tau_mean() const;
};

// n x n first-difference matrix A: row 1 is e_1, row i >= 2 is e_i - e_{i-1},
// so A f recovers increments under the f(t_0) = 0 convention.
Eigen::MatrixXd build_difference_matrix(int n);

// Benchmark trend functions on [0, 90], id in 1..5.
std::function<double(double)> trend_function(int id);

// f evaluated at the n+1 grid points.
Eigen::VectorXd eval_on_grid(const std::function<double(double)>& f,
                             const TimeGrid& grid);

// Z_i = 1{f(t_i) - f(t_{i-1}) + tau eps_i > 0}, eps ~ fGN(H), independently
// per replicate.  f_values holds the n+1 grid values of f.
BinaryPanel frap_simulate(const Eigen::VectorXd& f_values, Hurst h, double tau,
                          int replicates, const TimeGrid& grid, Rng& rng);

// P(Z_i = 1) = Phi of the increments of f/tau (n+1 input values, n outputs).
Eigen::VectorXd marginal_prob(const Eigen::VectorXd& f_over_tau);

// Exact Gaussian full conditional of the increment vector g given the mean
// latent path across replicates: precision (R/tau^2) Sigma_H^-1 +
// (1/tau^2) C_g^-1, mean (R/tau^2) Phi^-1 Sigma_H^-1 w_bar.
struct GaussianLaw {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov_factor;  // F with F F^T = covariance
};
GaussianLaw full_conditional_g(const Eigen::VectorXd& w_bar,
                               const Eigen::MatrixXd& sigma_h,
                               const Eigen::MatrixXd& c_g, double tau,
                               int replicates);

// Blocked Gibbs / adaptive-Metropolis sampler for the single-population
// model.  Deterministic for a given config (replicates draw from their own
// seed streams, so thread count does not change the output).
PosteriorSamples frap_fit(const BinaryPanel& panel, const FrapPriors& priors,
                          const McmcConfig& mcmc);

// Per-sample draws of f/tau at test points through the GP conditional
// (posterior mean plus conditional Gaussian noise); columns index samples.
Eigen::MatrixXd predict_trend(const PosteriorSamples& samples,
                              const std::vector<double>& test_points,
                              Rng& rng);

// One unconstrained posterior-predictive binary series per retained sample.
std::vector<Eigen::VectorXi> posterior_predictive_panel(
    const PosteriorSamples& samples, Rng& rng);

// Block aggregation of binary data: a block counts 1 when it contains at
// least one event.  Marginal P(1) and lag-one conditional P(1|previous 1)
// per scale, pooled over replicates; the conditional is empty when no block
// with a predecessor equal to 1 exists.
struct ScaleStat {
  int scale;
  double marginal;
  std::optional<double> conditional;
};
std::vector<ScaleStat> scale_statistics(const Eigen::MatrixXi& panel,
                                        const std::vector<int>& scales);

// Relative mean squared error of an estimate against a reference curve.
double remse(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth);

// Centered moving average with window truncation at the edges; window odd.
Eigen::VectorXd smooth_curve(const Eigen::VectorXd& series, int window);

}  // namespace frap
