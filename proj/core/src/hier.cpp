#include "frap/hier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "fit_internal.hpp"
#include "frap/mathutil.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frap {

using fitdetail::CovCache;

MembershipMatrix::MembershipMatrix(Eigen::MatrixXd omega)
    : omega_(std::move(omega)) {
  if (omega_.rows() < 1 || omega_.cols() < 1)
    throw std::invalid_argument("MembershipMatrix: empty");
  for (Eigen::Index j = 0; j < omega_.cols(); ++j) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < omega_.rows(); ++k) {
      if (omega_(k, j) < -1e-12)
        throw std::invalid_argument("MembershipMatrix: negative weight");
      omega_(k, j) = std::max(0.0, omega_(k, j));
      sum += omega_(k, j);
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("MembershipMatrix: column must sum to one");
  }
}

MembershipDraw simulate_membership(int members, Rng& rng) {
  if (members < 1)
    throw std::invalid_argument("simulate_membership: members >= 1");
  std::uniform_int_distribution<int> pick(1, 3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd om(3, members);
  std::vector<int> labels(members);
  for (int j = 0; j < members; ++j) {
    const int label = pick(rng);
    labels[j] = label;
    const double m1 = label == 1 ? 3.0 : 0.0;
    const double m2 = label == 2 ? 3.0 : 0.0;
    const double e1 = std::exp(m1 + gauss(rng));
    const double e2 = std::exp(m2 + gauss(rng));
    const double w3 = 1.0 / (1.0 + e1 + e2);
    om(0, j) = e1 * w3;
    om(1, j) = e2 * w3;
    om(2, j) = w3;
  }
  return {MembershipMatrix(om), labels};
}

Eigen::VectorXd combined_trend(const Eigen::MatrixXd& profiles,
                               const Eigen::VectorXd& weights) {
  if (profiles.cols() != weights.size())
    throw std::invalid_argument("combined_trend: class count mismatch");
  return profiles * weights;
}

std::vector<BinaryPanel> hier_simulate(const Eigen::MatrixXd& profiles,
                                       const MembershipMatrix& omega, Hurst h,
                                       double tau, int replicates,
                                       const TimeGrid& grid, Rng& rng) {
  if (profiles.rows() != grid.n + 1)
    throw std::invalid_argument("hier_simulate: profiles must have n+1 rows");
  if (profiles.cols() != omega.classes())
    throw std::invalid_argument("hier_simulate: class count mismatch");
  std::vector<BinaryPanel> panels;
  panels.reserve(omega.members());
  for (int j = 0; j < omega.members(); ++j) {
    const Eigen::VectorXd f = combined_trend(profiles, omega.value().col(j));
    panels.push_back(frap_simulate(f, h, tau, replicates, grid, rng));
  }
  return panels;
}

Eigen::MatrixXd HierSamples::omega_mean() const {
  if (omega.empty()) throw std::runtime_error("HierSamples: empty");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(classes, members);
  for (const auto& om : omega) acc += om;
  return acc / static_cast<double>(omega.size());
}

Eigen::MatrixXd HierSamples::g_mean() const {
  if (g.empty()) throw std::runtime_error("HierSamples: empty");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(g.front().rows(), classes);
  for (const auto& gi : g) acc += gi;
  return acc / static_cast<double>(g.size());
}

HierSamples hier_fit(const std::vector<BinaryPanel>& panels, int classes,
                     const FrapPriors& priors, const McmcConfig& mcmc) {
  using namespace fitdetail;
  validate_mcmc(mcmc);
  validate_priors(priors);
  apply_thread_cap();

  const int m = static_cast<int>(panels.size());
  if (m < 1) throw std::invalid_argument("hier_fit: need at least one panel");
  if (classes < 1) throw std::invalid_argument("hier_fit: classes >= 1");
  const int n = panels[0].length();
  const int reps = panels[0].replicates();
  for (const auto& p : panels) {
    if (p.length() != n || p.replicates() != reps ||
        p.grid.t0 != panels[0].grid.t0 || p.grid.delta != panels[0].grid.delta)
      throw std::invalid_argument("hier_fit: panels must share grid and R");
  }
  const int kk = classes;
  const long burn = mcmc.resolved_burn_in();
  const double neg_inf = -std::numeric_limits<double>::infinity();

  const std::vector<double> pts = unit_window_points(panels[0].grid);

  std::vector<std::vector<SignConstraint>> cons(m);
  for (int j = 0; j < m; ++j)
    for (int r = 0; r < reps; ++r) {
      Eigen::VectorXi row = panels[j].data.row(r).transpose();
      cons[j].push_back(SignConstraint::from_binary(row));
    }

  Rng rng = make_stream(mcmc.seed, 0);
  std::vector<Rng> rep_rng;
  rep_rng.reserve(static_cast<size_t>(m) * reps);
  for (int idx = 0; idx < m * reps; ++idx)
    rep_rng.push_back(make_stream(mcmc.seed, 1 + idx));
  std::normal_distribution<double> gauss(0.0, 1.0);

  double beta = 0.0, tau = 1.0;
  Eigen::MatrixXd eta = Eigen::MatrixXd::Zero(2, kk);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, kk);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Constant(kk, m, 1.0 / kk);
  std::vector<Eigen::MatrixXd> w(m);
  for (int j = 0; j < m; ++j) {
    w[j].resize(n, reps);
    for (int r = 0; r < reps; ++r)
      for (int i = 0; i < n; ++i)
        w[j](i, r) = panels[j].data(r, i) == 1 ? 0.5 : -0.5;
  }

  CovCache sig = hurst_cache(n, beta);
  std::vector<CovCache> cgk(kk);
  for (int k = 0; k < kk; ++k)
    cgk[k] = gp_cache(pts, eta.col(k), mcmc.nu);

  AdaptiveScale proto;
  proto.log_scale = std::log(mcmc.initial_scale);
  proto.adapt_interval = mcmc.adapt_interval;
  proto.target_accept = mcmc.target_accept;
  AdaptiveScale sc_b = proto;
  std::vector<AdaptiveScale> sc_e(kk, proto);

  const double bsd2 = priors.beta_prior_sd * priors.beta_prior_sd;
  const double esd2 = priors.eta_prior_sd * priors.eta_prior_sd;
  const double lam_prec = 1.0 / (priors.lambda * priors.lambda);

  Eigen::MatrixXd psi = g * omega;  // n x m mixed trends

  const long kept = (mcmc.iterations - burn + mcmc.thin - 1) / mcmc.thin;
  HierSamples out;
  out.grid = panels[0].grid;
  out.classes = kk;
  out.members = m;
  out.sigma.resize(kk, kept);
  out.phi.resize(kk, kept);
  out.accept_eta = Eigen::VectorXd::Zero(kk);
  out.iterations = mcmc.iterations;
  out.burn_in = burn;
  out.thin = mcmc.thin;
  out.seed = mcmc.seed;
  out.nu = mcmc.nu;

  long acc_b = 0;
  Eigen::VectorXd acc_e = Eigen::VectorXd::Zero(kk);
  int kept_idx = 0;

  // Latent Gaussian log likelihood of every panel, given a Sigma_H cache.
  auto latent_loglik = [&](const CovCache& c) {
    double qf = 0.0;
    for (int j = 0; j < m; ++j) {
      const Eigen::MatrixXd d = w[j].colwise() - psi.col(j);
      qf += c.llt.matrixL().solve(d).squaredNorm();
    }
    return -0.5 * m * reps *
               (n * std::log(2.0 * M_PI) + 2.0 * n * std::log(tau) +
                c.logdet) -
           qf / (2.0 * tau * tau);
  };

  for (long it = 1; it <= mcmc.iterations; ++it) {
    // (a) latent paths per unit and replicate
    const Eigen::MatrixXd lam = sig.prec / (tau * tau);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int idx = 0; idx < m * reps; ++idx) {
      const int j = idx / reps;
      const int r = idx % reps;
      Eigen::VectorXd col = w[j].col(r);
      gibbs_truncated_mvn_prec(psi.col(j), lam, cons[j][r], col,
                               mcmc.latent_sweeps, rep_rng[idx]);
      w[j].col(r) = col;
    }
    Eigen::MatrixXd wbar(n, m);
    for (int j = 0; j < m; ++j) wbar.col(j) = w[j].rowwise().mean();

    // (b) class profiles, one exact Gaussian draw each
    for (int k = 0; k < kk; ++k) {
      const double delta_k = omega.row(k).squaredNorm();
      const Eigen::MatrixXd wmk = wbar - psi + g.col(k) * omega.row(k);
      const Eigen::VectorXd v = wmk * omega.row(k).transpose();
      const Eigen::MatrixXd phi_k =
          (delta_k * reps * sig.prec + cgk[k].prec) / (tau * tau);
      Eigen::LLT<Eigen::MatrixXd> llt(phi_k);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("hier_fit: profile precision not PD");
      const Eigen::VectorXd mean =
          llt.solve(sig.prec * v * (reps / (tau * tau)));
      Eigen::VectorXd z(n);
      for (int i = 0; i < n; ++i) z[i] = gauss(rng);
      g.col(k) = mean + llt.matrixU().solve(z);
      psi.noalias() = g * omega;
    }

    // (c) membership weights on the simplex
    {
      const Eigen::MatrixXd p =
          (reps / (tau * tau)) * g.transpose() * sig.prec;  // K x n
      const Eigen::MatrixXd q = p * g;                      // K x K
      Eigen::MatrixXd vprec = q;
      vprec.diagonal().array() += lam_prec;
      Eigen::LLT<Eigen::MatrixXd> llt(vprec);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("hier_fit: weight precision not PD");
      const Eigen::MatrixXd vcov =
          llt.solve(Eigen::MatrixXd::Identity(kk, kk));
      for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd u = vcov * (p * wbar.col(j));
        omega.col(j) = sample_simplex_gaussian(u, vcov, omega.col(j), rng,
                                               mcmc.latent_sweeps);
      }
      psi.noalias() = g * omega;
    }

    // (d) shared Hurst exponent
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

    // (e) per-class GP hyperparameters
    for (int k = 0; k < kk; ++k) {
      auto logp = [&](const CovCache& c) {
        const double qf = g.col(k).dot(c.prec * g.col(k));
        return -0.5 * (n * std::log(2.0 * M_PI) + 2.0 * n * std::log(tau) +
                       c.logdet) -
               qf / (2.0 * tau * tau);
      };
      const Eigen::Vector2d cur = eta.col(k);
      const double lt_cur = logp(cgk[k]) - 0.5 * cur.squaredNorm() / esd2;
      std::optional<CovCache> cand;
      auto target = [&](const Eigen::VectorXd& e) {
        try {
          cand = gp_cache(pts, Eigen::Vector2d(e[0], e[1]), mcmc.nu);
        } catch (const std::exception&) {
          cand.reset();
          return neg_inf;
        }
        return logp(*cand) - 0.5 * e.squaredNorm() / esd2;
      };
      const RwResult res = adaptive_rw_step(target, cur, lt_cur, sc_e[k], rng);
      if (res.accepted) {
        eta.col(k) = res.point;
        cgk[k] = std::move(*cand);
        acc_e[k] += 1.0;
      }
      sc_e[k] = adapt_scale(sc_e[k]);
    }

    // (f) tau^2 from its inverse-gamma full conditional
    {
      double qf = 0.0;
      for (int j = 0; j < m; ++j) {
        const Eigen::MatrixXd d = w[j].colwise() - psi.col(j);
        qf += sig.llt.matrixL().solve(d).squaredNorm();
      }
      for (int k = 0; k < kk; ++k)
        qf += g.col(k).dot(cgk[k].prec * g.col(k));
      const double shape = 0.5 * n * (reps * m + kk) + priors.a_tau;
      const double rate = 0.5 * qf + priors.b_tau;
      std::gamma_distribution<double> gam(shape, 1.0);
      tau = std::sqrt(rate / gam(rng));
    }

    if (it > burn && (it - burn - 1) % mcmc.thin == 0) {
      out.hurst.push_back(logistic(beta));
      out.tau.push_back(tau);
      out.g.push_back(g);
      out.omega.push_back(omega);
      for (int k = 0; k < kk; ++k) {
        out.sigma(k, kept_idx) = std::exp(eta(0, k));
        out.phi(k, kept_idx) = std::exp(eta(1, k));
      }
      ++kept_idx;
    }
  }

  out.accept_beta = static_cast<double>(acc_b) / mcmc.iterations;
  out.accept_eta = acc_e / static_cast<double>(mcmc.iterations);
  return out;
}

DicResult dic(const HierSamples& samples,
              const std::vector<BinaryPanel>& panels, int ghk_draws,
              Rng& rng) {
  if (samples.size() == 0) throw std::invalid_argument("dic: empty samples");
  if (static_cast<int>(panels.size()) != samples.members)
    throw std::invalid_argument("dic: panel count mismatch");
  if (ghk_draws < 1) throw std::invalid_argument("dic: ghk_draws >= 1");
  const int m = samples.members;
  const int n = samples.n();
  const int reps = panels[0].replicates();
  const double log_floor = std::log(1e-300);

  std::vector<std::vector<SignConstraint>> cons(m);
  for (int j = 0; j < m; ++j)
    for (int r = 0; r < reps; ++r) {
      Eigen::VectorXi row = panels[j].data.row(r).transpose();
      cons[j].push_back(SignConstraint::from_binary(row));
    }

  // Common random numbers: every deviance evaluation (each retained draw and
  // the plug-in point) re-creates the same GHK stream per (unit, replicate),
  // so the Monte-Carlo noise cancels in D_bar - D_hat.  A point-mass
  // posterior then yields DIC == D(theta_hat) exactly.
  const std::uint64_t base_seed = rng();
  long floored = 0;
  auto deviance = [&](const Eigen::MatrixXd& g, const Eigen::MatrixXd& omega,
                      double hurst, double tau) {
    const Eigen::MatrixXd chol = tau * fgn_cholesky(n, Hurst(hurst));
    const Eigen::MatrixXd psi = g * omega;
    double acc = 0.0;
    for (int j = 0; j < m; ++j)
      for (int r = 0; r < reps; ++r) {
        Rng local = make_stream(
            base_seed, static_cast<std::uint64_t>(j) * reps + r);
        double lp = ghk_log_orthant_prob(psi.col(j), chol, cons[j][r],
                                         ghk_draws, local);
        if (lp < log_floor) {
          lp = log_floor;
          ++floored;
        }
        acc += lp;
      }
    return -2.0 * acc;
  };

  double d_bar = 0.0;
  for (int l = 0; l < samples.size(); ++l)
    d_bar += deviance(samples.g[l], samples.omega[l], samples.hurst[l],
                      samples.tau[l]);
  d_bar /= samples.size();

  const double h_bar =
      std::accumulate(samples.hurst.begin(), samples.hurst.end(), 0.0) /
      samples.size();
  const double tau_bar =
      std::accumulate(samples.tau.begin(), samples.tau.end(), 0.0) /
      samples.size();
  const double d_hat =
      deviance(samples.g_mean(), samples.omega_mean(), h_bar, tau_bar);

  return {2.0 * d_bar - d_hat, d_bar, d_hat, floored};
}

ColumnMatch match_columns(const Eigen::MatrixXd& estimate,
                          const Eigen::MatrixXd& reference) {
  if (estimate.rows() != reference.rows() ||
      estimate.cols() != reference.cols())
    throw std::invalid_argument("match_columns: shape mismatch");
  const int k = static_cast<int>(estimate.rows());
  if (k > 6)
    throw std::invalid_argument("match_columns: exhaustive search capped at 6");
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  ColumnMatch best;
  best.mean_abs_error = std::numeric_limits<double>::infinity();
  std::vector<int> p = perm;
  do {
    double err = 0.0;
    for (int i = 0; i < k; ++i)
      err += (estimate.row(p[i]) - reference.row(i)).cwiseAbs().sum();
    err /= static_cast<double>(estimate.size());
    if (err < best.mean_abs_error) {
      best.mean_abs_error = err;
      best.perm = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace frap
