#include "frap/samplers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "frap/mathutil.hpp"

namespace frap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailCut = 5.0;  // switch to rejection this far into a tail

// Uniform on (0,1]; avoids log(0) in the exponential proposals.
inline double unit_open(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return 1.0 - u(rng);
}

// Robert (1995) one-sided rejection for a standard normal on (a, b), a >= 0.
double robert_tail(double a, double b, Rng& rng) {
  const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    const double x = a - std::log(unit_open(rng)) / alpha;
    if (x > b) continue;
    const double d = x - alpha;
    if (unit_open(rng) <= std::exp(-0.5 * d * d)) return x;
  }
}

// Standard normal truncated to (a, b).
double std_truncnorm(double a, double b, Rng& rng) {
  if (a >= kTailCut) return robert_tail(a, b, rng);
  if (b <= -kTailCut) return -robert_tail(-b, -a, rng);
  const double pa = a == -kInf ? 0.0 : norm_cdf(a);
  const double pb = b == kInf ? 1.0 : norm_cdf(b);
  double u = pa + unit_open(rng) * (pb - pa);
  u = std::min(std::max(u, std::numeric_limits<double>::min()),
               1.0 - std::numeric_limits<double>::epsilon() / 2);
  return norm_quantile(u);
}
}  // namespace

SignConstraint::SignConstraint(std::vector<int> signs)
    : signs_(std::move(signs)) {
  if (signs_.empty())
    throw std::invalid_argument("SignConstraint: empty constraint");
  for (int s : signs_)
    if (s != 1 && s != -1)
      throw std::invalid_argument("SignConstraint: signs must be +1 or -1");
}

SignConstraint SignConstraint::from_binary(const Eigen::VectorXi& z) {
  std::vector<int> s(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z[i] != 0 && z[i] != 1)
      throw std::invalid_argument("SignConstraint: entries must be 0/1");
    s[i] = z[i] == 1 ? 1 : -1;
  }
  return SignConstraint(std::move(s));
}

bool SignConstraint::satisfied(const Eigen::VectorXd& x) const {
  if (x.size() != size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (signs_[i] == 1 ? !(x[i] > 0.0) : !(x[i] <= 0.0)) return false;
  }
  return true;
}

AdaptiveScale adapt_scale(AdaptiveScale s) {
  if (s.adapt_interval < 1)
    throw std::invalid_argument("adapt_scale: adapt_interval must be >= 1");
  if (s.iter > 0 && s.iter % s.adapt_interval == 0) {
    const double rate =
        static_cast<double>(s.window_accepts) / s.adapt_interval;
    const double step = 1.0 / std::sqrt(static_cast<double>(s.iter));
    s.log_scale += rate > s.target_accept ? step : -step;
    s.window_accepts = 0;
  }
  return s;
}

double sample_truncnorm(double mu, double sd, double lower, double upper,
                        Rng& rng) {
  if (!(sd > 0.0)) throw std::invalid_argument("sample_truncnorm: sd <= 0");
  if (!(lower < upper))
    throw std::invalid_argument("sample_truncnorm: empty interval");
  const double a = (lower - mu) / sd;
  const double b = (upper - mu) / sd;
  if (a == -kInf && b == kInf) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    return mu + sd * gauss(rng);
  }
  return mu + sd * std_truncnorm(a, b, rng);
}

void gibbs_truncated_mvn_prec(const Eigen::VectorXd& mean,
                              const Eigen::MatrixXd& precision,
                              const SignConstraint& signs,
                              Eigen::VectorXd& state, int sweeps, Rng& rng) {
  const int n = static_cast<int>(mean.size());
  if (precision.rows() != n || precision.cols() != n || state.size() != n ||
      signs.size() != n)
    throw std::invalid_argument("gibbs_truncated_mvn: dimension mismatch");
  if (sweeps < 1)
    throw std::invalid_argument("gibbs_truncated_mvn: sweeps must be >= 1");

  // r = precision * (state - mean), maintained incrementally.
  Eigen::VectorXd r = precision * (state - mean);
  for (int pass = 0; pass < sweeps; ++pass) {
    for (int i = 0; i < n; ++i) {
      const double qii = precision(i, i);
      if (!(qii > 0.0))
        throw std::runtime_error("gibbs_truncated_mvn: non-PD precision");
      const double old = state[i];
      const double cond_mean = mean[i] - (r[i] - qii * (old - mean[i])) / qii;
      const double cond_sd = 1.0 / std::sqrt(qii);
      const double draw =
          signs.sign(i) == 1
              ? sample_truncnorm(cond_mean, cond_sd, 0.0, kInf, rng)
              : sample_truncnorm(cond_mean, cond_sd, -kInf, 0.0, rng);
      state[i] = draw;
      r += precision.col(i) * (draw - old);
    }
  }
}

Eigen::VectorXd gibbs_truncated_mvn(const Eigen::VectorXd& mean,
                                    const Eigen::MatrixXd& chol_lower,
                                    const SignConstraint& signs,
                                    Eigen::VectorXd state, int sweeps,
                                    Rng& rng) {
  if (!signs.satisfied(state))
    throw std::invalid_argument(
        "gibbs_truncated_mvn: initial state violates the constraint");
  const int n = static_cast<int>(mean.size());
  const Eigen::MatrixXd linv = chol_lower.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd precision = linv.transpose() * linv;
  gibbs_truncated_mvn_prec(mean, precision, signs, state, sweeps, rng);
  return state;
}

Eigen::VectorXd sample_simplex_gaussian(const Eigen::VectorXd& mean,
                                        const Eigen::MatrixXd& cov,
                                        Eigen::VectorXd state, Rng& rng,
                                        int sweeps) {
  const int k = static_cast<int>(mean.size());
  if (cov.rows() != k || cov.cols() != k || state.size() != k)
    throw std::invalid_argument("sample_simplex_gaussian: dimension mismatch");
  if (state.minCoeff() < 0.0 || std::fabs(state.sum() - 1.0) > 1e-9)
    throw std::invalid_argument(
        "sample_simplex_gaussian: state is not on the simplex");
  if (k == 1) return Eigen::VectorXd::Ones(1);

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("sample_simplex_gaussian: covariance not PD");
  const Eigen::MatrixXd prec = llt.solve(Eigen::MatrixXd::Identity(k, k));

  // Reduction x = J y + e_K:  y carries the first K-1 coordinates.
  Eigen::MatrixXd jmat = Eigen::MatrixXd::Zero(k, k - 1);
  jmat.topRows(k - 1).setIdentity();
  jmat.row(k - 1).setConstant(-1.0);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(k);
  alpha[k - 1] = 1.0;

  const Eigen::MatrixXd py = jmat.transpose() * prec * jmat;  // y-precision
  const Eigen::VectorXd muy =
      py.llt().solve(jmat.transpose() * prec * (mean - alpha));

  Eigen::VectorXd y = state.head(k - 1);
  for (int pass = 0; pass < sweeps; ++pass) {
    for (int j = 0; j < k - 1; ++j) {
      const double qjj = py(j, j);
      const double rj = py.row(j) * (y - muy);
      const double cond_mean = muy[j] - (rj - qjj * (y[j] - muy[j])) / qjj;
      const double cond_sd = 1.0 / std::sqrt(qjj);
      const double hi = 1.0 - (y.sum() - y[j]);  // keeps x_K >= 0
      if (hi <= 0.0) {
        y[j] = 0.0;
        continue;
      }
      y[j] = sample_truncnorm(cond_mean, cond_sd, 0.0, hi, rng);
    }
  }
  Eigen::VectorXd x(k);
  x.head(k - 1) = y;
  x[k - 1] = std::max(0.0, 1.0 - y.sum());
  return x;
}

double ess(const std::vector<double>& chain, int max_lag) {
  const int n = static_cast<int>(chain.size());
  if (max_lag < 1) throw std::invalid_argument("ess: max_lag must be >= 1");
  if (n <= max_lag)
    throw std::invalid_argument("ess: chain no longer than max_lag");
  double mean = 0.0;
  for (double x : chain) mean += x;
  mean /= n;
  double c0 = 0.0;
  for (double x : chain) c0 += (x - mean) * (x - mean);
  c0 /= n;
  if (c0 == 0.0) throw std::invalid_argument("ess: constant chain");
  double acc = 0.0;
  for (int lag = 1; lag <= max_lag; ++lag) {
    double c = 0.0;
    for (int i = 0; i + lag < n; ++i)
      c += (chain[i] - mean) * (chain[i + lag] - mean);
    acc += c / n / c0;
  }
  return n / (1.0 + 2.0 * acc);
}

double ghk_log_orthant_prob(const Eigen::VectorXd& mean,
                            const Eigen::MatrixXd& chol_lower,
                            const SignConstraint& signs, int ndraws,
                            Rng& rng) {
  const int n = static_cast<int>(mean.size());
  if (chol_lower.rows() != n || chol_lower.cols() != n || signs.size() != n)
    throw std::invalid_argument("ghk: dimension mismatch");
  if (ndraws < 1) throw std::invalid_argument("ghk: ndraws must be >= 1");

  // Draws advance together coordinate by coordinate so the conditioning
  // means come out of one matrix product per row.
  Eigen::MatrixXd z(n, ndraws);
  std::vector<double> logw(ndraws, 0.0);
  Eigen::RowVectorXd cond(ndraws);
  for (int i = 0; i < n; ++i) {
    const double lii = chol_lower(i, i);
    if (!(lii > 0.0)) throw std::runtime_error("ghk: factor has bad diagonal");
    if (i == 0)
      cond.setZero();
    else
      cond.noalias() = chol_lower.row(i).head(i) * z.topRows(i);
    for (int d = 0; d < ndraws; ++d) {
      const double t = -(mean[i] + cond[d]) / lii;  // threshold for z_i
      if (signs.sign(i) == 1) {
        logw[d] += norm_logcdf(-t);
        z(i, d) = std_truncnorm(t, kInf, rng);
      } else {
        logw[d] += norm_logcdf(t);
        z(i, d) = std_truncnorm(-kInf, t, rng);
      }
    }
  }
  return logsumexp(logw) - std::log(static_cast<double>(ndraws));
}

double orthant_prob_ghk(const Eigen::VectorXd& mean,
                        const Eigen::MatrixXd& chol_lower,
                        const SignConstraint& signs, int ndraws, Rng& rng) {
  return std::exp(ghk_log_orthant_prob(mean, chol_lower, signs, ndraws, rng));
}

}  // namespace frap
