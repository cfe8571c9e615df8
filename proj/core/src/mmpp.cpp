#include "frap/mmpp.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace frap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Strong connectivity of the positive off-diagonal support (Warshall).
bool irreducible(const Eigen::MatrixXd& gen) {
  const int k = static_cast<int>(gen.rows());
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      reach[i][j] = i == j || gen(i, j) > 0.0;
  for (int v = 0; v < k; ++v)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (reach[i][v] && reach[v][j]) reach[i][j] = true;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (!reach[i][j]) return false;
  return true;
}
}  // namespace

MmppParams::MmppParams(Eigen::MatrixXd generator_, Eigen::VectorXd rates_)
    : generator(std::move(generator_)), rates(std::move(rates_)) {
  const int k = static_cast<int>(rates.size());
  // k = 1 is the degenerate homogeneous-Poisson case (useful as a check);
  // fitting requires k >= 2.
  if (k < 1) throw std::invalid_argument("MmppParams: need at least 1 state");
  if (generator.rows() != k || generator.cols() != k)
    throw std::invalid_argument("MmppParams: generator shape mismatch");
  for (int i = 0; i < k; ++i) {
    double row = 0.0;
    for (int j = 0; j < k; ++j) {
      if (i != j && generator(i, j) < 0.0)
        throw std::invalid_argument("MmppParams: negative off-diagonal");
      row += generator(i, j);
    }
    if (std::fabs(row) > 1e-10)
      throw std::invalid_argument("MmppParams: generator rows must sum to 0");
  }
  for (int i = 0; i < k; ++i)
    if (rates[i] < 0.0)
      throw std::invalid_argument("MmppParams: negative rate");
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix_exponential: square input required");
  return m.exp();
}

Eigen::VectorXd mmpp_stationary(const Eigen::MatrixXd& generator) {
  const int k = static_cast<int>(generator.rows());
  if (generator.cols() != k || k < 1)
    throw std::invalid_argument("mmpp_stationary: square input required");
  if (!irreducible(generator))
    throw std::invalid_argument("mmpp_stationary: reducible generator");
  Eigen::MatrixXd a(k + 1, k);
  a.topRows(k) = generator.transpose();
  a.bottomRows(1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k + 1);
  b[k] = 1.0;
  Eigen::VectorXd pi = a.colPivHouseholderQr().solve(b);
  if ((generator.transpose() * pi).norm() > 1e-8)
    throw std::runtime_error("mmpp_stationary: solve failed");
  for (int i = 0; i < k; ++i) pi[i] = std::max(0.0, pi[i]);
  return pi / pi.sum();
}

IntervalMatrices mmpp_interval_matrices(const MmppParams& params,
                                        double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("mmpp_interval_matrices: delta must be > 0");
  const Eigen::MatrixXd lambda = params.rates.asDiagonal();
  IntervalMatrices out;
  out.m0 = matrix_exponential((params.generator - lambda) * delta);
  const Eigen::MatrixXd full = matrix_exponential(params.generator * delta);
  out.m1 = full - out.m0;
  for (auto* m : {&out.m0, &out.m1})
    for (Eigen::Index i = 0; i < m->rows(); ++i)
      for (Eigen::Index j = 0; j < m->cols(); ++j) {
        if ((*m)(i, j) < -1e-12)
          throw std::runtime_error(
              "mmpp_interval_matrices: entry below clamp tolerance");
        (*m)(i, j) = std::max(0.0, (*m)(i, j));
      }
  return out;
}

double mmpp_loglik(const BinaryPanel& panel, const MmppParams& params) {
  const IntervalMatrices tm =
      mmpp_interval_matrices(params, panel.grid.delta);
  const Eigen::VectorXd pi = mmpp_stationary(params.generator);
  double total = 0.0;
  for (int r = 0; r < panel.replicates(); ++r) {
    Eigen::RowVectorXd v = pi.transpose();
    for (int i = 0; i < panel.length(); ++i) {
      v *= panel.data(r, i) == 1 ? tm.m1 : tm.m0;
      const double c = v.sum();
      if (!(c > 0.0)) return -kInf;  // an impossible cell under these params
      total += std::log(c);
      v /= c;
    }
  }
  return total;
}

Eigen::VectorXi mmpp_simulate(const MmppParams& params, int n_intervals,
                              double delta, Rng& rng) {
  if (n_intervals < 1)
    throw std::invalid_argument("mmpp_simulate: n_intervals >= 1");
  if (!(delta > 0.0))
    throw std::invalid_argument("mmpp_simulate: delta must be > 0");
  const int k = params.states();
  const Eigen::VectorXd pi = mmpp_stationary(params.generator);

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto draw_exp = [&](double rate) {
    return -std::log(1.0 - unif(rng)) / rate;
  };
  // initial state from the stationary law
  int state = k - 1;
  {
    const double u = unif(rng);
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
      acc += pi[i];
      if (u <= acc) {
        state = i;
        break;
      }
    }
  }

  const double horizon = n_intervals * delta;
  Eigen::VectorXi z = Eigen::VectorXi::Zero(n_intervals);
  double t = 0.0;
  while (t < horizon) {
    const double hold = -params.generator(state, state);
    const double t_end =
        hold > 0.0 ? std::min(horizon, t + draw_exp(hold)) : horizon;
    if (params.rates[state] > 0.0) {
      double te = t + draw_exp(params.rates[state]);
      while (te < t_end) {
        const auto cell = std::min<long>(
            static_cast<long>(te / delta), n_intervals - 1);
        z[cell] = 1;
        te += draw_exp(params.rates[state]);
      }
    }
    t = t_end;
    if (t >= horizon) break;
    // jump to the next state proportional to the off-diagonal row
    const double u = unif(rng) * hold;
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
      if (j == state) continue;
      acc += params.generator(state, j);
      if (u <= acc) {
        state = j;
        break;
      }
    }
  }
  return z;
}

namespace {

// Plain Nelder-Mead on an unconstrained vector function.
struct NmResult {
  Eigen::VectorXd x;
  double f;
  long evals;
};

NmResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                     const Eigen::VectorXd& x0, double step, long max_evals,
                     double ftol) {
  const int d = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> xs(d + 1, x0);
  std::vector<double> fs(d + 1);
  long evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double f = fn(x);
    return std::isfinite(f) ? f : kInf;
  };
  for (int i = 1; i <= d; ++i) xs[i][i - 1] += step;
  for (int i = 0; i <= d; ++i) fs[i] = eval(xs[i]);

  auto order = [&]() {
    std::vector<int> idx(d + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return fs[a] < fs[b]; });
    std::vector<Eigen::VectorXd> xs2(d + 1);
    std::vector<double> fs2(d + 1);
    for (int i = 0; i <= d; ++i) {
      xs2[i] = xs[idx[i]];
      fs2[i] = fs[idx[i]];
    }
    xs.swap(xs2);
    fs.swap(fs2);
  };

  order();
  while (evals < max_evals && fs[d] - fs[0] > ftol) {
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) centroid += xs[i];
    centroid /= d;

    const Eigen::VectorXd xr = centroid + (centroid - xs[d]);
    const double fr = eval(xr);
    if (fr < fs[0]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - xs[d]);
      const double fe = eval(xe);
      if (fe < fr) {
        xs[d] = xe;
        fs[d] = fe;
      } else {
        xs[d] = xr;
        fs[d] = fr;
      }
    } else if (fr < fs[d - 1]) {
      xs[d] = xr;
      fs[d] = fr;
    } else {
      const Eigen::VectorXd xc = centroid + 0.5 * (xs[d] - centroid);
      const double fc = eval(xc);
      if (fc < fs[d]) {
        xs[d] = xc;
        fs[d] = fc;
      } else {
        for (int i = 1; i <= d; ++i) {
          xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
          fs[i] = eval(xs[i]);
        }
      }
    }
    order();
  }
  return {xs[0], fs[0], evals};
}

}  // namespace

MmppFitResult mmpp_fit(const BinaryPanel& panel, int states, int starts,
                       std::uint64_t seed) {
  if (states < 2) throw std::invalid_argument("mmpp_fit: states >= 2");
  if (starts < 1) throw std::invalid_argument("mmpp_fit: starts >= 1");
  const int k = states;
  const int dim = k * (k - 1) + k;

  // log-parameterization: off-diagonal generator entries row by row, then
  // the per-state event rates
  auto unpack = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(k, k);
    int pos = 0;
    for (int i = 0; i < k; ++i) {
      double row = 0.0;
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        gen(i, j) = std::exp(x[pos++]);
        row += gen(i, j);
      }
      gen(i, i) = -row;
    }
    Eigen::VectorXd rates(k);
    for (int i = 0; i < k; ++i) rates[i] = std::exp(x[pos++]);
    return MmppParams(std::move(gen), std::move(rates));
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    // keep the optimizer inside a numerically sane box
    if (x.cwiseAbs().maxCoeff() > 25.0) return kInf;
    return -mmpp_loglik(panel, unpack(x));
  };

  // crude empirical event intensity to center the rate starts
  const double total_cells =
      static_cast<double>(panel.replicates()) * panel.length();
  double p_hat = panel.data.cast<double>().sum() / total_cells;
  p_hat = std::min(std::max(p_hat, 1.0 / (total_cells + 2.0)),
                   1.0 - 1.0 / (total_cells + 2.0));
  const double rate_hat = -std::log1p(-p_hat) / panel.grid.delta;

  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return std::log(lo) + unif(rng) * (std::log(hi) - std::log(lo));
  };

  NmResult best;
  best.f = kInf;
  best.evals = 0;
  int best_start = -1;
  long total_evals = 0;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd x0(dim);
    int pos = 0;
    for (int i = 0; i < k * (k - 1); ++i) x0[pos++] = log_uniform(1e-3, 1.0);
    for (int i = 0; i < k; ++i)
      x0[pos++] = std::log(rate_hat) + log_uniform(1e-3, 10.0);
    const NmResult r = nelder_mead(objective, x0, 0.7, 4000L * dim, 1e-9);
    total_evals += r.evals;
    if (r.f < best.f) {
      best = r;
      best_start = s;
    }
  }
  // polish the winner with a fresh simplex
  const NmResult polished =
      nelder_mead(objective, best.x, 0.1, 4000L * dim, 1e-10);
  total_evals += polished.evals;
  const Eigen::VectorXd xfin = polished.f <= best.f ? polished.x : best.x;
  const double ffin = std::min(polished.f, best.f);
  if (!std::isfinite(ffin))
    throw std::runtime_error("mmpp_fit: optimization failed to find a finite "
                             "likelihood");
  return {unpack(xfin), -ffin, best_start, total_evals};
}

}  // namespace frap
