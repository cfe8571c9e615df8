#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>

#include "frap/mathutil.hpp"
#include "frap/model.hpp"
#include "fit_internal.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frap {

namespace fitdetail {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("FRAP_THREADS")) {
    const int k = std::atoi(env);
    if (k > 0) omp_set_num_threads(k);  // 0 keeps the runtime default
  }
#endif
}

CovCache make_cache(Eigen::MatrixXd cov) {
  CovCache c;
  c.cov = std::move(cov);
  c.llt.compute(c.cov);
  if (c.llt.info() != Eigen::Success)
    throw std::runtime_error("covariance not positive definite");
  c.prec = c.llt.solve(
      Eigen::MatrixXd::Identity(c.cov.rows(), c.cov.cols()));
  c.logdet = 0.0;
  for (Eigen::Index i = 0; i < c.cov.rows(); ++i)
    c.logdet += 2.0 * std::log(c.llt.matrixL()(i, i));
  return c;
}

CovCache hurst_cache(int n, double beta) {
  return make_cache(fgn_cov_matrix(n, Hurst(logistic(beta))));
}

double unit_window_map(const TimeGrid& grid, double t) {
  return (t - grid.t0) / (grid.n * grid.delta);
}

std::vector<double> unit_window_points(const TimeGrid& grid) {
  std::vector<double> pts(grid.n);
  for (int i = 0; i < grid.n; ++i)
    pts[i] = unit_window_map(grid, grid.point(i + 1));
  return pts;
}

// Unit-scale prior covariance of the increment vector: A C A^T + nu I with C
// the smooth squared-exponential kernel on the grid (jitter enters once,
// after differencing).
Eigen::MatrixXd g_prior_cov(const std::vector<double>& pts,
                            const Eigen::Vector2d& eta, double nu) {
  const int n = static_cast<int>(pts.size());
  const Eigen::MatrixXd c =
      gp_kernel_matrix(pts, GpHyper(std::exp(eta[0]), std::exp(eta[1]), 0.0));
  Eigen::MatrixXd m = c;
  m.bottomRows(n - 1) -= c.topRows(n - 1);
  Eigen::MatrixXd b = m;
  b.rightCols(n - 1) -= m.leftCols(n - 1);
  b.diagonal().array() += nu;
  return b;
}

CovCache gp_cache(const std::vector<double>& pts, const Eigen::Vector2d& eta,
                  double nu) {
  return make_cache(g_prior_cov(pts, eta, nu));
}

GaussianLaw g_conditional_from_prec(const Eigen::VectorXd& w_bar,
                                    const Eigen::MatrixXd& prec_sigma,
                                    const Eigen::MatrixXd& prec_cg, double tau,
                                    int replicates) {
  const int n = static_cast<int>(w_bar.size());
  const double tau2 = tau * tau;
  const Eigen::MatrixXd phi = (replicates * prec_sigma + prec_cg) / tau2;
  Eigen::LLT<Eigen::MatrixXd> llt(phi);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("full_conditional_g: precision not PD");
  GaussianLaw law;
  law.mean = llt.solve(prec_sigma * w_bar * (replicates / tau2));
  law.cov_factor = llt.matrixU().solve(Eigen::MatrixXd::Identity(n, n));
  return law;
}

void validate_mcmc(const McmcConfig& mcmc) {
  if (mcmc.iterations < 1)
    throw std::invalid_argument("McmcConfig: iterations must be >= 1");
  const long burn = mcmc.resolved_burn_in();
  if (burn < 0 || burn >= mcmc.iterations)
    throw std::invalid_argument("McmcConfig: burn-in must be < iterations");
  if (mcmc.thin < 1) throw std::invalid_argument("McmcConfig: thin >= 1");
  if (mcmc.latent_sweeps < 1)
    throw std::invalid_argument("McmcConfig: latent_sweeps >= 1");
  if (mcmc.adapt_interval < 1)
    throw std::invalid_argument("McmcConfig: adapt_interval >= 1");
  if (!(mcmc.nu >= 0.0)) throw std::invalid_argument("McmcConfig: nu >= 0");
}

void validate_priors(const FrapPriors& p) {
  if (!(p.a_tau > 0.0 && p.b_tau > 0.0))
    throw std::invalid_argument("FrapPriors: a_tau, b_tau must be > 0");
  if (!(p.beta_prior_sd > 0.0 && p.eta_prior_sd > 0.0))
    throw std::invalid_argument("FrapPriors: prior sds must be > 0");
  if (!(p.lambda > 0.0))
    throw std::invalid_argument("FrapPriors: lambda must be > 0");
}

}  // namespace fitdetail

using fitdetail::CovCache;

GaussianLaw full_conditional_g(const Eigen::VectorXd& w_bar,
                               const Eigen::MatrixXd& sigma_h,
                               const Eigen::MatrixXd& c_g, double tau,
                               int replicates) {
  const int n = static_cast<int>(w_bar.size());
  if (sigma_h.rows() != n || sigma_h.cols() != n || c_g.rows() != n ||
      c_g.cols() != n)
    throw std::invalid_argument("full_conditional_g: dimension mismatch");
  if (!(tau > 0.0)) throw std::invalid_argument("full_conditional_g: tau > 0");
  if (replicates < 1)
    throw std::invalid_argument("full_conditional_g: replicates >= 1");
  const CovCache s = fitdetail::make_cache(sigma_h);
  const CovCache c = fitdetail::make_cache(c_g);
  return fitdetail::g_conditional_from_prec(w_bar, s.prec, c.prec, tau,
                                            replicates);
}

PosteriorSamples frap_fit(const BinaryPanel& panel, const FrapPriors& priors,
                          const McmcConfig& mcmc) {
  using namespace fitdetail;
  validate_mcmc(mcmc);
  validate_priors(priors);
  apply_thread_cap();

  const int n = panel.length();
  const int reps = panel.replicates();
  const long burn = mcmc.resolved_burn_in();
  const double neg_inf = -std::numeric_limits<double>::infinity();

  const std::vector<double> pts = unit_window_points(panel.grid);

  std::vector<SignConstraint> cons;
  cons.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    Eigen::VectorXi row = panel.data.row(r).transpose();
    cons.push_back(SignConstraint::from_binary(row));
  }

  Rng rng = make_stream(mcmc.seed, 0);
  std::vector<Rng> rep_rng;
  rep_rng.reserve(reps);
  for (int r = 0; r < reps; ++r) rep_rng.push_back(make_stream(mcmc.seed, 1 + r));
  std::normal_distribution<double> gauss(0.0, 1.0);

  double beta = 0.0;
  double tau = 1.0;
  Eigen::Vector2d eta(0.0, 0.0);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd w(n, reps);
  for (int r = 0; r < reps; ++r)
    for (int i = 0; i < n; ++i) w(i, r) = panel.data(r, i) == 1 ? 0.5 : -0.5;

  CovCache sig = hurst_cache(n, beta);
  CovCache cg = gp_cache(pts, eta, mcmc.nu);

  AdaptiveScale sc_b, sc_e;
  sc_b.log_scale = sc_e.log_scale = std::log(mcmc.initial_scale);
  sc_b.adapt_interval = sc_e.adapt_interval = mcmc.adapt_interval;
  sc_b.target_accept = sc_e.target_accept = mcmc.target_accept;

  const double bsd2 = priors.beta_prior_sd * priors.beta_prior_sd;
  const double esd2 = priors.eta_prior_sd * priors.eta_prior_sd;

  const long kept =
      (mcmc.iterations - burn + mcmc.thin - 1) / mcmc.thin;
  PosteriorSamples out;
  out.grid = panel.grid;
  out.g.resize(n, kept);
  out.hurst.reserve(kept);
  out.tau.reserve(kept);
  out.sigma.reserve(kept);
  out.phi.reserve(kept);
  out.iterations = mcmc.iterations;
  out.burn_in = burn;
  out.thin = mcmc.thin;
  out.seed = mcmc.seed;
  out.nu = mcmc.nu;

  long acc_b = 0, acc_e = 0;
  int kept_idx = 0;

  // Gaussian log likelihood of the latent panel given (Sigma_H, g, tau),
  // shared by the Hurst walk and the tau draw.
  auto latent_loglik = [&](const CovCache& c) {
    const Eigen::MatrixXd d = w.colwise() - g;
    const double qf = c.llt.matrixL().solve(d).squaredNorm();
    return -0.5 * reps *
               (n * std::log(2.0 * M_PI) + 2.0 * n * std::log(tau) + c.logdet) -
           qf / (2.0 * tau * tau);
  };
  auto g_logprior = [&](const CovCache& c) {
    const double qf = g.dot(c.prec * g);
    return -0.5 *
               (n * std::log(2.0 * M_PI) + 2.0 * n * std::log(tau) + c.logdet) -
           qf / (2.0 * tau * tau);
  };

  for (long it = 1; it <= mcmc.iterations; ++it) {
    // (a) latent paths, one truncated-MVN Gibbs scan per replicate
    const Eigen::MatrixXd lam = sig.prec / (tau * tau);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < reps; ++r) {
      Eigen::VectorXd col = w.col(r);
      gibbs_truncated_mvn_prec(g, lam, cons[r], col, mcmc.latent_sweeps,
                               rep_rng[r]);
      w.col(r) = col;
    }

    // (b) trend increments, exact Gaussian draw
    {
      const Eigen::VectorXd wbar = w.rowwise().mean();
      const GaussianLaw law =
          g_conditional_from_prec(wbar, sig.prec, cg.prec, tau, reps);
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = gauss(rng);
      g = law.mean + law.cov_factor * z;
    }

    // (c) Hurst exponent through its logistic transform
    {
      const double lt_cur = latent_loglik(sig) - 0.5 * beta * beta / bsd2;
      std::optional<CovCache> cand;
      auto target = [&](const Eigen::VectorXd& b) {
        try {
          cand = hurst_cache(n, b[0]);
        } catch (const std::exception&) {
          cand.reset();
          return neg_inf;
        }
        return latent_loglik(*cand) - 0.5 * b[0] * b[0] / bsd2;
      };
      Eigen::VectorXd bvec(1);
      bvec << beta;
      const RwResult res = adaptive_rw_step(target, bvec, lt_cur, sc_b, rng);
      if (res.accepted) {
        beta = res.point[0];
        sig = std::move(*cand);
        ++acc_b;
      }
      sc_b = adapt_scale(sc_b);
    }

    // (d) tau^2 from its inverse-gamma full conditional
    {
      const Eigen::MatrixXd d = w.colwise() - g;
      const double qf_w = sig.llt.matrixL().solve(d).squaredNorm();
      const double qf_g = g.dot(cg.prec * g);
      const double shape = 0.5 * n * (reps + 1) + priors.a_tau;
      const double rate = 0.5 * (qf_w + qf_g) + priors.b_tau;
      std::gamma_distribution<double> gam(shape, 1.0);
      tau = std::sqrt(rate / gam(rng));
    }

    // (e) GP hyperparameters, joint walk on (log sigma, log phi)
    {
      const double lt_cur = g_logprior(cg) - 0.5 * eta.squaredNorm() / esd2;
      std::optional<CovCache> cand;
      auto target = [&](const Eigen::VectorXd& e) {
        try {
          cand = gp_cache(pts, Eigen::Vector2d(e[0], e[1]), mcmc.nu);
        } catch (const std::exception&) {
          cand.reset();
          return neg_inf;
        }
        return g_logprior(*cand) - 0.5 * e.squaredNorm() / esd2;
      };
      const RwResult res = adaptive_rw_step(target, eta, lt_cur, sc_e, rng);
      if (res.accepted) {
        eta = res.point;
        cg = std::move(*cand);
        ++acc_e;
      }
      sc_e = adapt_scale(sc_e);
    }

    if (it > burn && (it - burn - 1) % mcmc.thin == 0) {
      out.hurst.push_back(logistic(beta));
      out.tau.push_back(tau);
      out.sigma.push_back(std::exp(eta[0]));
      out.phi.push_back(std::exp(eta[1]));
      out.g.col(kept_idx++) = g;
    }
  }

  out.g.conservativeResize(n, kept_idx);
  out.accept_beta = static_cast<double>(acc_b) / mcmc.iterations;
  out.accept_eta = static_cast<double>(acc_e) / mcmc.iterations;
  return out;
}

Eigen::MatrixXd predict_trend(const PosteriorSamples& samples,
                              const std::vector<double>& test_points,
                              Rng& rng) {
  if (samples.size() == 0)
    throw std::invalid_argument("predict_trend: no samples");
  if (test_points.empty())
    throw std::invalid_argument("predict_trend: no test points");
  const int n = samples.n();
  const int nt = static_cast<int>(test_points.size());
  // Test points arrive in grid time units; the kernel works on the unit
  // window, so both sides go through the same map as the fit did.
  const std::vector<double> train = fitdetail::unit_window_points(samples.grid);
  std::vector<double> test(nt);
  for (int i = 0; i < nt; ++i)
    test[i] = fitdetail::unit_window_map(samples.grid, test_points[i]);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::MatrixXd out(nt, samples.size());
  for (int l = 0; l < samples.size(); ++l) {
    Eigen::VectorXd f(n);
    double cum = 0.0;
    for (int i = 0; i < n; ++i) {
      cum += samples.g(i, l);
      f[i] = cum;
    }
    const GpHyper hyper(samples.sigma[l], samples.phi[l], samples.nu);
    const GpConditional cond = gp_conditional(train, f, test, hyper);
    // factor the (possibly rank-deficient) conditional covariance
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cond.cov);
    const Eigen::MatrixXd fac =
        es.eigenvectors() *
        es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    Eigen::VectorXd z(nt);
    for (int i = 0; i < nt; ++i) z[i] = gauss(rng);
    // f* ~ N(mean, tau^2 cov); report f*/tau
    out.col(l) = cond.mean / samples.tau[l] + fac * z;
  }
  return out;
}

std::vector<Eigen::VectorXi> posterior_predictive_panel(
    const PosteriorSamples& samples, Rng& rng) {
  if (samples.size() == 0)
    throw std::invalid_argument("posterior_predictive_panel: no samples");
  const int n = samples.n();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXi> out;
  out.reserve(samples.size());
  for (int l = 0; l < samples.size(); ++l) {
    const Eigen::MatrixXd chol = fgn_cholesky(n, Hurst(samples.hurst[l]));
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z[i] = gauss(rng);
    const Eigen::VectorXd w =
        samples.g.col(l) + samples.tau[l] * (chol * z);
    out.push_back(threshold_to_binary(w));
  }
  return out;
}

}  // namespace frap
