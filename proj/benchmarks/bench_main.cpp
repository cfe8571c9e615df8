#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "frap/hier.hpp"
#include "frap/longmem.hpp"
#include "frap/mmpp.hpp"
#include "frap/model.hpp"
#include "frap/rng.hpp"
#include "frap/samplers.hpp"

namespace {

void BM_SimulateFgn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  frap::Rng rng = frap::make_rng(42);
  for (auto _ : state) {
    auto x = frap::simulate_fgn(n, frap::Hurst(0.75), rng);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SimulateFgn)->Range(1 << 8, 1 << 14)->Complexity();

void BM_FgnCholesky(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto l = frap::fgn_cholesky(n, frap::Hurst(0.75));
    benchmark::DoNotOptimize(l.data());
  }
}
BENCHMARK(BM_FgnCholesky)->Range(64, 512);

void BM_TruncatedMvnSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  frap::Rng rng = frap::make_rng(7);
  const Eigen::MatrixXd l = frap::fgn_cholesky(n, frap::Hurst(0.8));
  Eigen::VectorXi z(n);
  for (int i = 0; i < n; ++i) z[i] = i % 2;
  const frap::SignConstraint cons = frap::SignConstraint::from_binary(z);
  Eigen::VectorXd start(n);
  for (int i = 0; i < n; ++i) start[i] = z[i] ? 0.5 : -0.5;
  const Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
  for (auto _ : state) {
    auto x = frap::gibbs_truncated_mvn(mu, l, cons, start, 1, rng);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_TruncatedMvnSweep)->Arg(90)->Arg(180);

void BM_GhkOrthant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  frap::Rng rng = frap::make_rng(11);
  const Eigen::MatrixXd l = frap::fgn_cholesky(n, frap::Hurst(0.75));
  Eigen::VectorXi z(n);
  for (int i = 0; i < n; ++i) z[i] = (i % 3) != 0;
  const frap::SignConstraint cons = frap::SignConstraint::from_binary(z);
  const Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
  for (auto _ : state) {
    double lp = frap::ghk_log_orthant_prob(mu, l, cons, 64, rng);
    benchmark::DoNotOptimize(lp);
  }
}
BENCHMARK(BM_GhkOrthant)->Arg(90)->Arg(180);

void BM_MmppLoglik(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::MatrixXd gen(2, 2);
  gen << -0.2, 0.2, 0.5, -0.5;
  Eigen::VectorXd rates(2);
  rates << 0.05, 2.0;
  const frap::MmppParams params(gen, rates);
  frap::Rng rng = frap::make_rng(3);
  Eigen::MatrixXi data(1, n);
  data.row(0) = frap::mmpp_simulate(params, n, 1.0, rng).transpose();
  const frap::BinaryPanel panel(data, frap::TimeGrid(0.0, 1.0, n));
  for (auto _ : state) {
    double ll = frap::mmpp_loglik(panel, params);
    benchmark::DoNotOptimize(ll);
  }
}
BENCHMARK(BM_MmppLoglik)->Range(256, 4096);

void BM_FitIteration(benchmark::State& state) {
  frap::Rng rng = frap::make_rng(5);
  const frap::TimeGrid grid(0.0, 1.0, 90);
  const Eigen::VectorXd f =
      frap::eval_on_grid(frap::trend_function(3), grid);
  frap::BinaryPanel panel =
      frap::frap_simulate(f, frap::Hurst(0.75), 0.1, 10, grid, rng);
  frap::FrapPriors priors;
  for (auto _ : state) {
    frap::McmcConfig mcmc;
    mcmc.iterations = 20;
    mcmc.burn_in = 0;
    mcmc.seed = 99;
    auto s = frap::frap_fit(panel, priors, mcmc);
    benchmark::DoNotOptimize(s.hurst.data());
  }
}
BENCHMARK(BM_FitIteration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
