#pragma once

#include <Eigen/Dense>
#include <vector>

#include "frap/model.hpp"

// Shared pieces of the single-population and hierarchical fitters.  Not part
// of the installed interface.
namespace frap::fitdetail {

struct CovCache {
  Eigen::MatrixXd cov;
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::MatrixXd prec;
  double logdet = 0.0;
};

double logistic(double x);
void apply_thread_cap();

CovCache make_cache(Eigen::MatrixXd cov);
CovCache hurst_cache(int n, double beta);

// Interior grid times mapped to (0, 1].  The trend kernel always sees time on
// the unit window, so the length-scale prior is read relative to the
// observation span rather than to the sampling interval; whole-window trends
// then sit near the prior median instead of several prior sds above it.
std::vector<double> unit_window_points(const TimeGrid& grid);
double unit_window_map(const TimeGrid& grid, double t);

// Unit-scale prior covariance of trend increments, A C A^T + nu I.
Eigen::MatrixXd g_prior_cov(const std::vector<double>& pts,
                            const Eigen::Vector2d& eta, double nu);
CovCache gp_cache(const std::vector<double>& pts, const Eigen::Vector2d& eta,
                  double nu);

GaussianLaw g_conditional_from_prec(const Eigen::VectorXd& w_bar,
                                    const Eigen::MatrixXd& prec_sigma,
                                    const Eigen::MatrixXd& prec_cg, double tau,
                                    int replicates);

void validate_mcmc(const McmcConfig& mcmc);
void validate_priors(const FrapPriors& p);

}  // namespace frap::fitdetail
