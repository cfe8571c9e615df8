#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "frap/model.hpp"

namespace frap {

// Markov-modulated Poisson process: CTMC generator plus one event intensity
// per state.  Rows of the generator sum to zero, off-diagonals and
// intensities nonnegative.  A single state (plain Poisson) is allowed as a
// degenerate case; fitting still requires two or more states.
struct MmppParams {
  MmppParams(Eigen::MatrixXd generator, Eigen::VectorXd rates);
  int states() const { return static_cast<int>(rates.size()); }
  Eigen::MatrixXd generator;
  Eigen::VectorXd rates;
};

// Scaling-and-squaring Pade approximant (backward stable for the moderate
// norms used here).
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m);

// Stationary law pi of the CTMC: pi G = 0, pi 1 = 1.  Throws when the
// positive-rate graph of G is not strongly connected (reducible chain).
Eigen::VectorXd mmpp_stationary(const Eigen::MatrixXd& generator);

// Interval transition factors over a window of length delta:
// M0 = exp((G - Lambda) delta) covers "no event", M1 = exp(G delta) - M0 the
// complement; entries are clamped to zero if rounding drives them slightly
// negative, and M0 + M1 is row stochastic.
struct IntervalMatrices {
  Eigen::MatrixXd m0, m1;
};
IntervalMatrices mmpp_interval_matrices(const MmppParams& params, double delta);

// Exact interval-censored likelihood: sum over replicates of
// log( pi * prod_i M_{z_i} * 1 ), evaluated with per-step renormalization.
double mmpp_loglik(const BinaryPanel& panel, const MmppParams& params);

// Exact simulation of the indicator series: CTMC sojourns by exponential
// clocks, events by per-state Poisson streams, initial state stationary.
Eigen::VectorXi mmpp_simulate(const MmppParams& params, int n_intervals,
                              double delta, Rng& rng);

// Maximum likelihood by multi-start Nelder-Mead on log-parameters.
struct MmppFitResult {
  MmppParams params;
  double loglik;
  int best_start;
  long evaluations;
};
MmppFitResult mmpp_fit(const BinaryPanel& panel, int states, int starts,
                       std::uint64_t seed);

}  // namespace frap
