// Panel simulation, the blocked Gibbs sampler for the single-population
// model, trend prediction, posterior predictive draws, and the block-scale
// event statistics.
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "frap/longmem.hpp"
#include "frap/mathutil.hpp"
#include "frap/model.hpp"
#include "frap/rng.hpp"

using namespace frap;

namespace {

BinaryPanel small_panel(std::uint64_t seed) {
  const TimeGrid grid(0.0, 1.0, 20);
  Rng rng = make_rng(seed);
  return frap_simulate(Eigen::VectorXd::Zero(21), Hurst(0.7), 0.2, 5, grid,
                       rng);
}

McmcConfig short_chain() {
  McmcConfig mcmc;
  mcmc.iterations = 400;
  mcmc.seed = 99;
  return mcmc;
}

}  // namespace

TEST_SUITE("fit") {

TEST_CASE("flat trend gives balanced events") {
  const TimeGrid grid(0.0, 1.0, 1000);
  Rng rng = make_rng(60);
  const BinaryPanel panel =
      frap_simulate(Eigen::VectorXd::Zero(1001), Hurst(0.5), 0.1, 100, grid,
                    rng);
  CHECK(panel.replicates() == 100);
  CHECK(panel.length() == 1000);
  const double mean = panel.data.cast<double>().mean();
  CHECK(mean == doctest::Approx(0.5).epsilon(0.02));
  CHECK((panel.data.array() == 0 || panel.data.array() == 1).all());
}

TEST_CASE("steep trend pushes the rate to Phi of the slope ratio") {
  // increments of f are 1.0 with tau = 0.5, so P(Z = 1) = Phi(2) = 0.97725
  const TimeGrid grid(0.0, 1.0, 2000);
  Eigen::VectorXd f(2001);
  for (int i = 0; i <= 2000; ++i) f[i] = static_cast<double>(i);
  Rng rng = make_rng(61);
  const BinaryPanel panel = frap_simulate(f, Hurst(0.5), 0.5, 50, grid, rng);
  CHECK(panel.data.cast<double>().mean() ==
        doctest::Approx(0.97725).epsilon(0.01));
}

TEST_CASE("persistent noise shows up as lag-one conditional persistence") {
  const TimeGrid grid(0.0, 1.0, 4096);
  Rng rng = make_rng(62);
  const BinaryPanel panel =
      frap_simulate(Eigen::VectorXd::Zero(4097), Hurst(0.9), 1.0, 25, grid,
                    rng);
  const auto stats = scale_statistics(panel.data, {1});
  REQUIRE(stats[0].conditional.has_value());
  // arcsine law value at H = 0.9: 0.5 + asin(2^0.8 - 1) / pi = 0.76572
  CHECK(*stats[0].conditional ==
        doctest::Approx(conditional_persistence(Hurst(0.9))).epsilon(0.03));
}

TEST_CASE("simulator rejects malformed inputs") {
  const TimeGrid grid(0.0, 1.0, 10);
  Rng rng = make_rng(63);
  CHECK_THROWS_AS(frap_simulate(Eigen::VectorXd::Zero(10), Hurst(0.5), 0.1, 2,
                                grid, rng),
                  std::invalid_argument);  // needs n + 1 values
  CHECK_THROWS_AS(frap_simulate(Eigen::VectorXd::Zero(11), Hurst(0.5), 0.0, 2,
                                grid, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(frap_simulate(Eigen::VectorXd::Zero(11), Hurst(0.5), 0.1, 0,
                                grid, rng),
                  std::invalid_argument);
}

TEST_CASE("sampler smoke test: shapes, ranges, bookkeeping") {
  const BinaryPanel panel = small_panel(64);
  const PosteriorSamples post = frap_fit(panel, FrapPriors{}, short_chain());

  CHECK(post.size() == 200);  // default burn-in is half the chain
  CHECK(post.g.rows() == 20);
  CHECK(post.g.cols() == 200);
  CHECK(post.iterations == 400);
  CHECK(post.burn_in == 200);
  CHECK(post.seed == 99);
  for (double h : post.hurst) {
    CHECK(h > 0.0);
    CHECK(h < 1.0);
  }
  for (double t : post.tau) CHECK(t > 0.0);
  for (double s : post.sigma) CHECK(s > 0.0);
  for (double p : post.phi) CHECK(p > 0.0);
  CHECK(post.accept_beta >= 0.0);
  CHECK(post.accept_beta <= 1.0);
  CHECK(post.accept_eta >= 0.0);
  CHECK(post.accept_eta <= 1.0);
  CHECK(post.f_over_tau_mean().size() == 20);
}

TEST_CASE("sampler is deterministic in the seed") {
  const BinaryPanel panel = small_panel(65);
  const PosteriorSamples a = frap_fit(panel, FrapPriors{}, short_chain());
  const PosteriorSamples b = frap_fit(panel, FrapPriors{}, short_chain());
  CHECK(a.hurst == b.hurst);
  CHECK(a.tau == b.tau);
  CHECK((a.g - b.g).cwiseAbs().maxCoeff() == 0.0);

  McmcConfig other = short_chain();
  other.seed = 100;
  const PosteriorSamples c = frap_fit(panel, FrapPriors{}, other);
  CHECK(a.hurst != c.hurst);
}

TEST_CASE("sampler validates its configuration") {
  const BinaryPanel panel = small_panel(66);
  McmcConfig bad = short_chain();
  bad.iterations = 0;
  CHECK_THROWS_AS(frap_fit(panel, FrapPriors{}, bad), std::invalid_argument);

  bad = short_chain();
  bad.burn_in = 400;
  CHECK_THROWS_AS(frap_fit(panel, FrapPriors{}, bad), std::invalid_argument);

  bad = short_chain();
  bad.thin = 0;
  CHECK_THROWS_AS(frap_fit(panel, FrapPriors{}, bad), std::invalid_argument);

  FrapPriors flat;
  flat.a_tau = 0.0;
  CHECK_THROWS_AS(frap_fit(panel, flat, short_chain()),
                  std::invalid_argument);
  flat = FrapPriors{};
  flat.eta_prior_sd = -1.0;
  CHECK_THROWS_AS(frap_fit(panel, flat, short_chain()),
                  std::invalid_argument);
}

TEST_CASE("trend prediction interpolates each retained draw at the grid") {
  const BinaryPanel panel = small_panel(67);
  const PosteriorSamples post = frap_fit(panel, FrapPriors{}, short_chain());

  std::vector<double> grid_points(20);
  for (int i = 0; i < 20; ++i) grid_points[i] = post.grid.point(i + 1);
  Rng rng = make_rng(68);
  const Eigen::MatrixXd pred = predict_trend(post, grid_points, rng);
  REQUIRE(pred.rows() == 20);
  REQUIRE(pred.cols() == post.size());

  // with the jitter shared between kernel and cross kernel the GP regression
  // reproduces the training curve exactly, and the conditional variance
  // collapses, so every column must equal cumsum(g)/tau for its draw
  for (int s = 0; s < post.size(); ++s) {
    Eigen::VectorXd curve(20);
    double acc = 0.0;
    for (int i = 0; i < 20; ++i) {
      acc += post.g(i, s);
      curve[i] = acc / post.tau[s];
    }
    CHECK((pred.col(s) - curve).cwiseAbs().maxCoeff() < 1e-5);
  }

  // same seed, same draws
  Rng rng2 = make_rng(68);
  const Eigen::MatrixXd again = predict_trend(post, grid_points, rng2);
  CHECK((pred - again).cwiseAbs().maxCoeff() == 0.0);

  // far from the data the prediction falls back toward the zero prior mean
  Rng rng3 = make_rng(69);
  const Eigen::MatrixXd far = predict_trend(post, {1000.0}, rng3);
  CHECK(std::fabs(far.row(0).mean()) < 0.3);
}

TEST_CASE("posterior predictive draws from a pinned posterior") {
  PosteriorSamples post;
  post.grid = TimeGrid(0.0, 1.0, 50);
  const int kept = 200;
  post.hurst.assign(kept, 0.5);
  post.tau.assign(kept, 1.0);
  post.sigma.assign(kept, 1.0);
  post.phi.assign(kept, 1.0);
  post.g = Eigen::MatrixXd::Zero(50, kept);

  Rng rng = make_rng(70);
  const std::vector<Eigen::VectorXi> series =
      posterior_predictive_panel(post, rng);
  REQUIRE(series.size() == static_cast<std::size_t>(kept));
  double total = 0.0;
  for (const auto& z : series) {
    REQUIRE(z.size() == 50);
    for (int i = 0; i < 50; ++i) {
      CHECK((z[i] == 0 || z[i] == 1));
      total += z[i];
    }
  }
  // flat trend, H = 1/2: iid Bernoulli(1/2) over 10^4 draws
  CHECK(total / (kept * 50.0) == doctest::Approx(0.5).epsilon(0.03));

  Rng rng2 = make_rng(70);
  const auto again = posterior_predictive_panel(post, rng2);
  for (std::size_t s = 0; s < series.size(); ++s)
    CHECK(series[s] == again[s]);
}

TEST_CASE("scale statistics on hand-checkable panels") {
  const Eigen::MatrixXi ones = Eigen::MatrixXi::Ones(2, 16);
  for (const auto& st : scale_statistics(ones, {1, 2, 4})) {
    CHECK(st.marginal == doctest::Approx(1.0));
    REQUIRE(st.conditional.has_value());
    CHECK(*st.conditional == doctest::Approx(1.0));
  }

  // single 1 in the last block: no block follows a 1, conditional undefined
  Eigen::MatrixXi sparse(1, 4);
  sparse << 0, 0, 0, 1;
  const auto stats = scale_statistics(sparse, {1});
  CHECK(stats[0].marginal == doctest::Approx(0.25));
  CHECK(!stats[0].conditional.has_value());

  CHECK_THROWS_AS(scale_statistics(sparse, {0}), std::invalid_argument);
  CHECK_THROWS_AS(scale_statistics(sparse, {4}), std::invalid_argument);
}

TEST_CASE("independent events aggregate like an OR of Bernoullis") {
  // block of 4 iid Bernoulli(0.2): P(any) = 1 - 0.8^4 = 0.5904, and blocks
  // stay independent, so the conditional matches the marginal
  Rng rng = make_rng(71);
  std::bernoulli_distribution coin(0.2);
  Eigen::MatrixXi panel(1, 100000);
  for (int i = 0; i < panel.cols(); ++i) panel(0, i) = coin(rng) ? 1 : 0;
  const auto stats = scale_statistics(panel, {4});
  CHECK(stats[0].marginal == doctest::Approx(0.5904).epsilon(0.02));
  REQUIRE(stats[0].conditional.has_value());
  CHECK(*stats[0].conditional == doctest::Approx(0.5904).epsilon(0.03));
}

TEST_CASE("or-aggregation of persistent events saturates slower than iid") {
  // a block counts 1 when it contains any event, so both the marginal and
  // the conditional must grow with the block size; long memory shows up as
  // visibly incomplete saturation where iid events at the same rate would
  // already sit at 1 - 2^-16
  Rng rng = make_rng(72);
  const int n = 1 << 17;
  const Eigen::VectorXd noise = simulate_fgn(n, Hurst(0.8), rng);
  Eigen::MatrixXi panel(1, n);
  for (int i = 0; i < n; ++i) panel(0, i) = noise[i] > 0.0 ? 1 : 0;

  const auto stats = scale_statistics(panel, {1, 2, 4, 8, 16});
  for (const auto& st : stats) REQUIRE(st.conditional.has_value());

  // at the base scale the conditional is the arcsine persistence value
  CHECK(*stats[0].conditional ==
        doctest::Approx(conditional_persistence(Hurst(0.8))).epsilon(0.03));
  for (std::size_t i = 1; i < stats.size(); ++i) {
    CHECK(stats[i].marginal > stats[i - 1].marginal);
    CHECK(*stats[i].conditional > *stats[i - 1].conditional);
  }
  CHECK(stats.back().marginal < 0.995);
  CHECK(*stats.back().conditional < 0.995);
}

}  // TEST_SUITE
