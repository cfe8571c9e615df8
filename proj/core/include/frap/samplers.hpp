#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "frap/rng.hpp"

namespace frap {

// Per-coordinate half-line constraints: +1 means (0, inf), -1 means
// (-inf, 0].  This is the event set of a binary observation under a probit
// link, hence the from_binary constructor.
class SignConstraint {
 public:
  explicit SignConstraint(std::vector<int> signs);
  static SignConstraint from_binary(const Eigen::VectorXi& z);
  int size() const { return static_cast<int>(signs_.size()); }
  int sign(int i) const { return signs_[i]; }
  bool satisfied(const Eigen::VectorXd& x) const;

 private:
  std::vector<int> signs_;
};

// Random-walk proposal scale with windowed acceptance-rate adaptation.
struct AdaptiveScale {
  double log_scale = std::log(0.5);
  long iter = 0;           // MCMC iterations recorded so far
  int window_accepts = 0;  // acceptances since the last adaptation
  int adapt_interval = 50;
  double target_accept = 0.3;

  double scale() const { return std::exp(log_scale); }
  void record(bool accepted) {
    ++iter;
    if (accepted) ++window_accepts;
  }
};

// At iterations divisible by adapt_interval, multiply the proposal scale by
// exp(iter^{-1/2}) when the window acceptance rate exceeds the target and
// divide by it otherwise, then reset the window.  The shrinking factor gives
// diminishing adaptation.
AdaptiveScale adapt_scale(AdaptiveScale s);

// Draw from N(mu, sd^2) truncated to (lower, upper); bounds may be infinite.
// Inverse-CDF inversion for moderate intervals, exponential (Robert-style)
// rejection when the interval sits >= 5 sd into a tail.
double sample_truncnorm(double mu, double sd, double lower, double upper,
                        Rng& rng);

// Systematic-scan Gibbs for N(mean, Sigma) restricted to a sign orthant;
// chol_lower is the lower Cholesky factor of Sigma.  `state` must satisfy the
// constraint and is advanced `sweeps` full passes.
Eigen::VectorXd gibbs_truncated_mvn(const Eigen::VectorXd& mean,
                                    const Eigen::MatrixXd& chol_lower,
                                    const SignConstraint& signs,
                                    Eigen::VectorXd state, int sweeps,
                                    Rng& rng);

// Same scan given the precision matrix directly, updating state in place.
// The fitters use this form: one precision serves every replicate chain.
void gibbs_truncated_mvn_prec(const Eigen::VectorXd& mean,
                              const Eigen::MatrixXd& precision,
                              const SignConstraint& signs,
                              Eigen::VectorXd& state, int sweeps, Rng& rng);

// Gibbs update of x ~ N(mean, cov) restricted to the probability simplex
// {x >= 0, sum x = 1}.  Works in the (K-1)-dimensional reduction x = J y + e_K
// with J = (I_{K-1}, -1)^T, sampling y coordinate-wise on its feasible
// interval, so the returned point sums to one exactly up to rounding.
Eigen::VectorXd sample_simplex_gaussian(const Eigen::VectorXd& mean,
                                        const Eigen::MatrixXd& cov,
                                        Eigen::VectorXd state, Rng& rng,
                                        int sweeps = 1);

struct RwResult {
  Eigen::VectorXd point;
  bool accepted;
  double log_target;  // value at the returned point
};

// One Gaussian random-walk Metropolis step with the current adaptive scale.
// Non-finite proposal targets are rejected.  Records the accept flag into
// `scale`; the caller applies adapt_scale once per iteration.
template <class LogTarget>
RwResult adaptive_rw_step(LogTarget&& log_target, const Eigen::VectorXd& current,
                          double current_log_target, AdaptiveScale& scale,
                          Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd prop(current.size());
  const double s = scale.scale();
  for (Eigen::Index i = 0; i < current.size(); ++i)
    prop[i] = current[i] + s * gauss(rng);
  const double lt = log_target(prop);
  bool accept = false;
  if (std::isfinite(lt)) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    accept = std::log(1.0 - unif(rng)) < lt - current_log_target;
  }
  scale.record(accept);
  if (accept) return {prop, true, lt};
  return {current, false, current_log_target};
}

template <class LogTarget>
RwResult adaptive_rw_step(LogTarget&& log_target, const Eigen::VectorXd& current,
                          AdaptiveScale& scale, Rng& rng) {
  return adaptive_rw_step(std::forward<LogTarget>(log_target), current,
                          log_target(current), scale, rng);
}

// Effective sample size L / (1 + 2 sum_{j=1..max_lag} rho_j) with raw
// empirical autocorrelations (no positivity truncation).  Throws on constant
// chains and on chains no longer than max_lag.
double ess(const std::vector<double>& chain, int max_lag = 30);

// GHK sequential-importance estimate of P(X in orthant) for
// X ~ N(mean, L L^T); returns the log estimate (logprob form) or the
// probability itself.
double ghk_log_orthant_prob(const Eigen::VectorXd& mean,
                            const Eigen::MatrixXd& chol_lower,
                            const SignConstraint& signs, int ndraws, Rng& rng);
double orthant_prob_ghk(const Eigen::VectorXd& mean,
                        const Eigen::MatrixXd& chol_lower,
                        const SignConstraint& signs, int ndraws, Rng& rng);

}  // namespace frap
