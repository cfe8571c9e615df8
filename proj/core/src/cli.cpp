#include "frap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "frap/config.hpp"
#include "frap/hier.hpp"
#include "frap/hurst.hpp"
#include "frap/io.hpp"
#include "frap/mmpp.hpp"
#include "frap/model.hpp"
#include "frap/samplers.hpp"
#include "frap/version.hpp"

namespace frap {

namespace {

using nlohmann::json;

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (...) {
      throw std::invalid_argument("bad numeric list entry '" + field + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("empty numeric list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-9)
      throw std::invalid_argument("expected integer list, got " +
                                  format_double(v));
    out.push_back(i);
  }
  return out;
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

// Hash of a serialized parameter block; commands without a RunConfig still
// get a reproducibility fingerprint this way.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_manifest(const std::string& artifact, json j) {
  j["version"] = kVersion;
  if (!j.contains("config_hash"))
    j["config_hash"] = hash_hex(fnv1a(j.dump()));
  write_text(artifact + ".manifest.json", j.dump(2) + "\n");
}

double quantile(std::vector<double> v, double p) {
  if (v.empty()) throw std::invalid_argument("quantile of empty vector");
  std::sort(v.begin(), v.end());
  const double pos = p * (static_cast<double>(v.size()) - 1.0);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  if (lo + 1 >= v.size()) return v.back();
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * v[lo] + w * v[lo + 1];
}

json ess_or_null(const std::vector<double>& chain) {
  try {
    return ess(chain);
  } catch (const std::exception&) {
    return nullptr;  // constant or too-short chain
  }
}

int parse_trend_id(const std::string& name) {
  if (name == "none" || name == "0") return 0;
  std::string t = name;
  if (!t.empty() && (t[0] == 'f' || t[0] == 'F')) t = t.substr(1);
  try {
    size_t used = 0;
    int id = std::stoi(t, &used);
    if (used == t.size() && id >= 1 && id <= 5) return id;
  } catch (...) {
  }
  throw std::invalid_argument("unknown trend '" + name +
                              "' (expected f1..f5 or none)");
}

// MCMC/prior flags shared by fit and fit-hier.  Values only take effect when
// the flag was given, so the precedence is flags > --config file > defaults.
struct FitFlags {
  std::string config_path;
  long iterations = 0, burn_in = 0;
  int thin = 0, latent_sweeps = 0, adapt_interval = 0;
  std::uint64_t seed = 0;
  double target_accept = 0, initial_scale = 0, nu = 0;
  double a_tau = 0, b_tau = 0, beta_sd = 0, eta_sd = 0, lambda = 0;

  CLI::Option *o_iterations = nullptr, *o_burn_in = nullptr, *o_thin = nullptr,
              *o_seed = nullptr, *o_latent = nullptr, *o_adapt = nullptr,
              *o_target = nullptr, *o_scale = nullptr, *o_nu = nullptr,
              *o_a_tau = nullptr, *o_b_tau = nullptr, *o_beta_sd = nullptr,
              *o_eta_sd = nullptr, *o_lambda = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "JSON config file (flags override it)");
    o_iterations = cmd->add_option("--iters", iterations, "MCMC iterations");
    o_burn_in = cmd->add_option("--burn-in", burn_in,
                                "burn-in iterations (default iters/2)");
    o_thin = cmd->add_option("--thin", thin, "thinning stride");
    o_seed = cmd->add_option("--seed", seed, "RNG seed");
    o_latent = cmd->add_option("--latent-sweeps", latent_sweeps,
                               "latent Gibbs sweeps per iteration");
    o_adapt = cmd->add_option("--adapt-interval", adapt_interval,
                              "proposal adaptation window");
    o_target = cmd->add_option("--target-accept", target_accept,
                               "random-walk target acceptance rate");
    o_scale = cmd->add_option("--initial-scale", initial_scale,
                              "initial random-walk proposal scale");
    o_nu = cmd->add_option("--nu", nu, "GP jitter");
    o_a_tau = cmd->add_option("--a-tau", a_tau, "tau^2 prior shape");
    o_b_tau = cmd->add_option("--b-tau", b_tau, "tau^2 prior rate");
    o_beta_sd = cmd->add_option("--beta-sd", beta_sd,
                                "prior sd of logit Hurst");
    o_eta_sd = cmd->add_option("--eta-sd", eta_sd,
                               "prior sd of log GP hyperparameters");
    o_lambda = cmd->add_option("--lambda", lambda,
                               "membership weight prior scale");
  }

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig::defaults()
                                        : RunConfig::from_json_file(config_path);
    if (o_iterations->count()) cfg.mcmc.iterations = iterations;
    if (o_burn_in->count()) cfg.mcmc.burn_in = burn_in;
    if (o_thin->count()) cfg.mcmc.thin = thin;
    if (o_seed->count()) cfg.mcmc.seed = seed;
    if (o_latent->count()) cfg.mcmc.latent_sweeps = latent_sweeps;
    if (o_adapt->count()) cfg.mcmc.adapt_interval = adapt_interval;
    if (o_target->count()) cfg.mcmc.target_accept = target_accept;
    if (o_scale->count()) cfg.mcmc.initial_scale = initial_scale;
    if (o_nu->count()) cfg.mcmc.nu = nu;
    if (o_a_tau->count()) cfg.priors.a_tau = a_tau;
    if (o_b_tau->count()) cfg.priors.b_tau = b_tau;
    if (o_beta_sd->count()) cfg.priors.beta_prior_sd = beta_sd;
    if (o_eta_sd->count()) cfg.priors.eta_prior_sd = eta_sd;
    if (o_lambda->count()) cfg.priors.lambda = lambda;
    return cfg;
  }
};

json grid_json(const TimeGrid& grid) {
  return {{"t0", grid.t0}, {"delta", grid.delta}, {"n", grid.n}};
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string model = "frap", out, trend = "none", gen, rates;
  int n = 90, replicates = 1;
  double t0 = 0.0, delta = 1.0, hurst = 0.75, tau = 0.1;
  std::uint64_t seed = 1;
};

void run_simulate(const SimulateArgs& a) {
  TimeGrid grid(a.t0, a.delta, a.n);
  json params = {{"model", a.model}, {"n", a.n},     {"R", a.replicates},
                 {"t0", a.t0},       {"delta", a.delta}};
  Eigen::MatrixXi data(a.replicates, a.n);
  if (a.model == "frap") {
    const int id = parse_trend_id(a.trend);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(a.n + 1);
    if (id > 0) f = eval_on_grid(trend_function(id), grid);
    Rng rng = make_stream(a.seed, 0);
    BinaryPanel panel = frap_simulate(f, Hurst(a.hurst), a.tau, a.replicates,
                                      grid, rng);
    data = panel.data;
    params["trend"] = a.trend;
    params["H"] = a.hurst;
    params["tau"] = a.tau;
  } else if (a.model == "mmpp") {
    if (a.gen.empty() || a.rates.empty())
      throw std::invalid_argument("--model mmpp requires --gen and --rates");
    const auto rates = parse_double_list(a.rates);
    const auto gvals = parse_double_list(a.gen);
    const int k = static_cast<int>(rates.size());
    if (static_cast<int>(gvals.size()) != k * k)
      throw std::invalid_argument("--gen must hold KxK row-major entries");
    Eigen::MatrixXd gen(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) gen(i, j) = gvals[i * k + j];
    MmppParams mp(gen, Eigen::Map<const Eigen::VectorXd>(rates.data(), k));
    Rng rng = make_stream(a.seed, 0);
    for (int r = 0; r < a.replicates; ++r)
      data.row(r) = mmpp_simulate(mp, a.n, a.delta, rng).transpose();
    params["gen"] = a.gen;
    params["rates"] = a.rates;
  } else {
    throw std::invalid_argument("unknown --model '" + a.model + "'");
  }
  save_panel(BinaryPanel(data, grid), a.out);
  write_manifest(a.out, {{"command", "simulate"},
                         {"seed", a.seed},
                         {"params", params}});
  std::cout << "wrote " << a.out << " (" << a.replicates << " x " << a.n
            << ")\n";
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  std::string panel, out;
  double t0 = 0.0, delta = 1.0;
  FitFlags flags;
};

void run_fit(const FitArgs& a) {
  const RunConfig cfg = a.flags.resolve();
  const BinaryPanel panel = load_panel(a.panel, a.t0, a.delta);
  const PosteriorSamples s = frap_fit(panel, cfg.priors, cfg.mcmc);
  save_samples(s, a.out);
  json manifest = {{"command", "fit"},
                   {"seed", s.seed},
                   {"grid", grid_json(s.grid)},
                   {"iterations", s.iterations},
                   {"burn_in", s.burn_in},
                   {"thin", s.thin},
                   {"nu", s.nu},
                   {"panel", a.panel},
                   {"acceptance",
                    {{"beta", s.accept_beta}, {"eta", s.accept_eta}}},
                   {"ess", {{"H", ess_or_null(s.hurst)},
                            {"tau", ess_or_null(s.tau)}}},
                   {"config", json::parse(cfg.to_json())},
                   {"config_hash", hash_hex(cfg.hash())}};
  write_manifest(a.out, manifest);
  double h_mean = 0, tau_mean = 0;
  for (int l = 0; l < s.size(); ++l) {
    h_mean += s.hurst[l];
    tau_mean += s.tau[l];
  }
  h_mean /= s.size();
  tau_mean /= s.size();
  std::cout << "kept " << s.size() << " draws; posterior mean H = "
            << format_double(h_mean) << ", tau = " << format_double(tau_mean)
            << "; accept beta " << format_double(s.accept_beta) << ", eta "
            << format_double(s.accept_eta) << "\n";
}

// ---------------------------------------------------------------------------
// fit-hier

struct FitHierArgs {
  std::vector<std::string> panels;
  std::string out;
  int classes = 2, dic_draws = 128;
  double t0 = 0.0, delta = 1.0;
  FitFlags flags;
};

void run_fit_hier(const FitHierArgs& a) {
  const RunConfig cfg = a.flags.resolve();
  std::vector<BinaryPanel> panels;
  panels.reserve(a.panels.size());
  for (const auto& p : a.panels) panels.push_back(load_panel(p, a.t0, a.delta));
  const HierSamples s = hier_fit(panels, a.classes, cfg.priors, cfg.mcmc);

  // scalar chains: one row per retained draw
  std::ostringstream sc;
  sc << "# frap-hier-scalars v1\n";
  sc << "H,tau";
  for (int k = 0; k < a.classes; ++k) sc << ",sigma_" << k + 1;
  for (int k = 0; k < a.classes; ++k) sc << ",phi_" << k + 1;
  sc << "\n";
  for (int l = 0; l < s.size(); ++l) {
    sc << format_double(s.hurst[l]) << ',' << format_double(s.tau[l]);
    for (int k = 0; k < a.classes; ++k)
      sc << ',' << format_double(s.sigma(k, l));
    for (int k = 0; k < a.classes; ++k) sc << ',' << format_double(s.phi(k, l));
    sc << "\n";
  }
  write_text(a.out + "_scalars.csv", sc.str());

  const Eigen::MatrixXd om = s.omega_mean();
  std::ostringstream oc;
  for (int j = 0; j < om.cols(); ++j) oc << (j ? "," : "") << "unit_" << j + 1;
  oc << "\n";
  for (int k = 0; k < om.rows(); ++k) {
    for (int j = 0; j < om.cols(); ++j)
      oc << (j ? "," : "") << format_double(om(k, j));
    oc << "\n";
  }
  write_text(a.out + "_omega_mean.csv", oc.str());

  const Eigen::MatrixXd gm = s.g_mean();
  std::ostringstream gc;
  for (int k = 0; k < gm.cols(); ++k) gc << (k ? "," : "") << "class_" << k + 1;
  gc << "\n";
  for (int i = 0; i < gm.rows(); ++i) {
    for (int k = 0; k < gm.cols(); ++k)
      gc << (k ? "," : "") << format_double(gm(i, k));
    gc << "\n";
  }
  write_text(a.out + "_g_mean.csv", gc.str());

  json eta = json::array();
  for (int k = 0; k < s.accept_eta.size(); ++k) eta.push_back(s.accept_eta[k]);
  json manifest = {{"command", "fit-hier"},
                   {"seed", s.seed},
                   {"grid", grid_json(s.grid)},
                   {"classes", s.classes},
                   {"members", s.members},
                   {"iterations", s.iterations},
                   {"burn_in", s.burn_in},
                   {"thin", s.thin},
                   {"nu", s.nu},
                   {"panels", a.panels},
                   {"acceptance", {{"beta", s.accept_beta}, {"eta", eta}}},
                   {"ess", {{"H", ess_or_null(s.hurst)},
                            {"tau", ess_or_null(s.tau)}}},
                   {"config", json::parse(cfg.to_json())},
                   {"config_hash", hash_hex(cfg.hash())}};

  if (a.dic_draws > 0) {
    Rng rng = make_stream(cfg.mcmc.seed, 1000003);
    const DicResult d = dic(s, panels, a.dic_draws, rng);
    manifest["dic"] = {{"dic", d.dic},
                       {"d_bar", d.d_bar},
                       {"d_hat", d.d_hat},
                       {"floored", d.floored},
                       {"ghk_draws", a.dic_draws}};
    std::cout << "DIC(K=" << a.classes << ") = " << format_double(d.dic)
              << "\n";
  }
  write_manifest(a.out + "_scalars.csv", manifest);
  std::cout << "kept " << s.size() << " draws for " << s.members
            << " units\n";
}

// ---------------------------------------------------------------------------
// hurst

struct HurstArgs {
  std::string input, out, estimator = "both", scales;
  int degree = 0;
};

void run_hurst(const HurstArgs& a) {
  if (a.estimator != "rs" && a.estimator != "dfa" && a.estimator != "both")
    throw std::invalid_argument("--estimator must be rs, dfa or both");
  const auto series = load_series_csv(a.input);
  std::ostringstream os;
  os << "series,estimator,kind,scale,value\n";
  for (size_t idx = 0; idx < series.size(); ++idx) {
    const Eigen::VectorXd& x = series[idx];
    const int len = static_cast<int>(x.size());
    const ScaleGrid grid = a.scales.empty()
                               ? ScaleGrid::dyadic(len)
                               : ScaleGrid(parse_int_list(a.scales), len);
    if (a.estimator != "dfa") {
      for (int m : grid.scales())
        os << idx + 1 << ",rs,scale," << m << ','
           << format_double(rs_statistic(x, m)) << "\n";
      os << idx + 1 << ",rs,slope,,"
         << format_double(estimate_hurst_rs(x, grid)) << "\n";
    }
    if (a.estimator != "rs") {
      for (int m : grid.scales())
        os << idx + 1 << ",dfa,scale," << m << ','
           << format_double(dfa_fluctuation(x, m, a.degree)) << "\n";
      os << idx + 1 << ",dfa,slope,,"
         << format_double(estimate_hurst_dfa(x, grid, a.degree)) << "\n";
    }
  }
  if (a.out.empty()) {
    std::cout << os.str();
  } else {
    write_text(a.out, os.str());
    write_manifest(a.out, {{"command", "hurst"},
                           {"params",
                            {{"input", a.input},
                             {"estimator", a.estimator},
                             {"degree", a.degree},
                             {"scales", a.scales}}}});
  }
}

// ---------------------------------------------------------------------------
// mmpp-fit

struct MmppFitArgs {
  std::string panel, out;
  int states = 2, starts = 8;
  std::uint64_t seed = 1;
  double t0 = 0.0, delta = 1.0;
};

void run_mmpp_fit(const MmppFitArgs& a) {
  const BinaryPanel panel = load_panel(a.panel, a.t0, a.delta);
  const MmppFitResult r = mmpp_fit(panel, a.states, a.starts, a.seed);
  json gen = json::array();
  for (int i = 0; i < a.states; ++i) {
    json row = json::array();
    for (int j = 0; j < a.states; ++j) row.push_back(r.params.generator(i, j));
    gen.push_back(row);
  }
  json rates = json::array();
  for (int i = 0; i < a.states; ++i) rates.push_back(r.params.rates[i]);
  json out = {{"states", a.states}, {"delta", a.delta},
              {"generator", gen},   {"rates", rates},
              {"loglik", r.loglik}, {"best_start", r.best_start},
              {"evaluations", r.evaluations}};
  write_text(a.out, out.dump(2) + "\n");
  write_manifest(a.out, {{"command", "mmpp-fit"},
                         {"seed", a.seed},
                         {"params",
                          {{"panel", a.panel},
                           {"states", a.states},
                           {"starts", a.starts},
                           {"delta", a.delta}}}});
  std::cout << "loglik = " << format_double(r.loglik) << " (start "
            << r.best_start << ", " << r.evaluations << " evaluations)\n";
}

// ---------------------------------------------------------------------------
// predict

struct PredictArgs {
  std::string samples, out, points;
  double from = 0.0, to = 0.0;
  int num = 0;
  std::uint64_t seed = 1;
  CLI::Option *o_from = nullptr, *o_to = nullptr;
};

void run_predict(const PredictArgs& a) {
  const PosteriorSamples s = load_samples(a.samples);
  std::vector<double> pts;
  if (!a.points.empty()) {
    pts = parse_double_list(a.points);
  } else {
    double lo = a.o_from->count() ? a.from : s.grid.t0;
    double hi = a.o_to->count() ? a.to : s.grid.point(s.grid.n);
    int num = a.num > 0 ? a.num : s.grid.n + 1;
    if (num < 2) throw std::invalid_argument("--num must be at least 2");
    for (int i = 0; i < num; ++i)
      pts.push_back(lo + (hi - lo) * i / (num - 1));
  }
  Rng rng = make_stream(a.seed, 0);
  const Eigen::MatrixXd draws = predict_trend(s, pts, rng);
  std::ostringstream os;
  os << "point,mean,lower95,upper95\n";
  for (size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> row(draws.cols());
    for (int l = 0; l < draws.cols(); ++l)
      row[l] = draws(static_cast<int>(i), l);
    const double mean = draws.row(static_cast<int>(i)).mean();
    os << format_double(pts[i]) << ',' << format_double(mean) << ','
       << format_double(quantile(row, 0.025)) << ','
       << format_double(quantile(row, 0.975)) << "\n";
  }
  write_text(a.out, os.str());
  write_manifest(a.out, {{"command", "predict"},
                         {"seed", a.seed},
                         {"params",
                          {{"samples", a.samples},
                           {"points", static_cast<int>(pts.size())}}}});
  std::cout << "wrote " << a.out << " (" << pts.size() << " points, "
            << draws.cols() << " draws)\n";
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string samples, panel, out, scales = "1,2,4,9,15", mmpp_params;
  long mmpp_length = 100000;
  double t0 = 0.0, delta = 1.0;
  std::uint64_t seed = 1;
};

void append_stats(std::ostringstream& os, const std::string& source,
                  const std::vector<ScaleStat>& stats) {
  for (const auto& st : stats) {
    os << source << ',' << st.scale << ',' << format_double(st.marginal)
       << ',';
    if (st.conditional) os << format_double(*st.conditional);
    os << "\n";
  }
}

void run_check(const CheckArgs& a) {
  const PosteriorSamples s = load_samples(a.samples);
  const BinaryPanel obs = load_panel(a.panel, a.t0, a.delta);
  const auto scales = parse_int_list(a.scales);

  std::ostringstream os;
  os << "source,scale,marginal,conditional\n";
  append_stats(os, "observed", scale_statistics(obs.data, scales));

  Rng rng = make_stream(a.seed, 0);
  const auto pp = posterior_predictive_panel(s, rng);
  Eigen::MatrixXi ppmat(static_cast<int>(pp.size()), s.n());
  for (size_t l = 0; l < pp.size(); ++l)
    ppmat.row(static_cast<int>(l)) = pp[l].transpose();
  append_stats(os, "posterior_predictive", scale_statistics(ppmat, scales));

  if (!a.mmpp_params.empty()) {
    const json j = json::parse(read_text(a.mmpp_params));
    const auto& genj = j.at("generator");
    const int k = static_cast<int>(genj.size());
    Eigen::MatrixXd gen(k, k);
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < k; ++c) gen(i, c) = genj[i][c].get<double>();
    Eigen::VectorXd rates(k);
    for (int i = 0; i < k; ++i) rates[i] = j.at("rates")[i].get<double>();
    const double delta = j.value("delta", a.delta);
    MmppParams mp(gen, rates);
    Rng mrng = make_stream(a.seed, 1);
    Eigen::MatrixXi sim(1, a.mmpp_length);
    sim.row(0) =
        mmpp_simulate(mp, static_cast<int>(a.mmpp_length), delta, mrng)
            .transpose();
    append_stats(os, "mmpp", scale_statistics(sim, scales));
  }
  write_text(a.out, os.str());
  write_manifest(a.out, {{"command", "check"},
                         {"seed", a.seed},
                         {"params",
                          {{"samples", a.samples},
                           {"panel", a.panel},
                           {"scales", a.scales},
                           {"mmpp_params", a.mmpp_params},
                           {"mmpp_length", a.mmpp_length}}}});
  std::cout << "wrote " << a.out << "\n";
}

// ---------------------------------------------------------------------------
// diag

struct DiagArgs {
  std::string samples, out;
};

void run_diag(const DiagArgs& a) {
  const PosteriorSamples s = load_samples(a.samples);
  json j = {{"draws", s.size()},
            {"iterations", s.iterations},
            {"burn_in", s.burn_in},
            {"thin", s.thin},
            {"acceptance", {{"beta", s.accept_beta}, {"eta", s.accept_eta}}},
            {"ess", {{"H", ess_or_null(s.hurst)},
                     {"tau", ess_or_null(s.tau)},
                     {"sigma", ess_or_null(s.sigma)},
                     {"phi", ess_or_null(s.phi)}}}};
  if (a.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(a.out, j.dump(2) + "\n");
    write_manifest(a.out, {{"command", "diag"},
                           {"params", {{"samples", a.samples}}}});
  }
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"binary long-memory time series: simulation, fitting, checks"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* csim = app.add_subcommand("simulate",
                                  "generate a binary panel (FRAP or MMPP)");
  csim->add_option("--model", sim.model, "frap or mmpp (default frap)");
  csim->add_option("--out", sim.out, "output panel CSV")->required();
  csim->add_option("--n", sim.n, "number of intervals");
  csim->add_option("--R", sim.replicates, "replicates");
  csim->add_option("--t0", sim.t0, "grid origin");
  csim->add_option("--delta", sim.delta, "grid spacing");
  csim->add_option("--seed", sim.seed, "RNG seed");
  csim->add_option("--trend", sim.trend, "trend f1..f5 or none");
  csim->add_option("--H", sim.hurst, "Hurst exponent");
  csim->add_option("--tau", sim.tau, "noise scale");
  csim->add_option("--gen", sim.gen, "MMPP generator, row-major KxK");
  csim->add_option("--rates", sim.rates, "MMPP state intensities");
  csim->callback([&]() { run_simulate(sim); });

  FitArgs fit;
  auto* cfit = app.add_subcommand("fit", "single-population posterior fit");
  cfit->add_option("--panel", fit.panel, "input panel CSV")->required();
  cfit->add_option("--out", fit.out, "output samples CSV")->required();
  cfit->add_option("--t0", fit.t0, "grid origin");
  cfit->add_option("--delta", fit.delta, "grid spacing");
  fit.flags.attach(cfit);
  cfit->callback([&]() { run_fit(fit); });

  FitHierArgs hier;
  auto* chier = app.add_subcommand("fit-hier",
                                   "grade-of-membership fit over units");
  chier->add_option("--panel", hier.panels, "per-unit panel CSV (repeat)")
      ->required();
  chier->add_option("--out", hier.out, "output path prefix")->required();
  chier->add_option("--K", hier.classes, "number of latent classes")
      ->required();
  chier->add_option("--dic-draws", hier.dic_draws,
                    "GHK draws for the DIC (0 disables)");
  chier->add_option("--t0", hier.t0, "grid origin");
  chier->add_option("--delta", hier.delta, "grid spacing");
  hier.flags.attach(chier);
  chier->callback([&]() { run_fit_hier(hier); });

  HurstArgs hu;
  auto* chu = app.add_subcommand("hurst", "RS and DFA scaling estimates");
  chu->add_option("--input", hu.input, "CSV, one series per row")->required();
  chu->add_option("--estimator", hu.estimator, "rs, dfa or both");
  chu->add_option("--degree", hu.degree, "trend degree removed by DFA");
  chu->add_option("--scales", hu.scales, "block sizes (default dyadic)");
  chu->add_option("--out", hu.out, "output CSV (default stdout)");
  chu->callback([&]() { run_hurst(hu); });

  MmppFitArgs mf;
  auto* cmf = app.add_subcommand("mmpp-fit", "MMPP maximum likelihood");
  cmf->add_option("--panel", mf.panel, "input panel CSV")->required();
  cmf->add_option("--out", mf.out, "output parameter JSON")->required();
  cmf->add_option("--states", mf.states, "number of latent states");
  cmf->add_option("--starts", mf.starts, "optimizer restarts");
  cmf->add_option("--seed", mf.seed, "RNG seed");
  cmf->add_option("--t0", mf.t0, "grid origin");
  cmf->add_option("--delta", mf.delta, "grid spacing");
  cmf->callback([&]() { run_mmpp_fit(mf); });

  PredictArgs pr;
  auto* cpr = app.add_subcommand("predict",
                                 "posterior trend at test points");
  cpr->add_option("--samples", pr.samples, "samples CSV from fit")->required();
  cpr->add_option("--out", pr.out, "output CSV")->required();
  cpr->add_option("--points", pr.points, "explicit test points");
  pr.o_from = cpr->add_option("--from", pr.from, "test grid start");
  pr.o_to = cpr->add_option("--to", pr.to, "test grid end");
  cpr->add_option("--num", pr.num, "number of test points");
  cpr->add_option("--seed", pr.seed, "RNG seed");
  cpr->callback([&]() { run_predict(pr); });

  CheckArgs ck;
  auto* cck = app.add_subcommand("check",
                                 "posterior-predictive scale statistics");
  cck->add_option("--samples", ck.samples, "samples CSV from fit")->required();
  cck->add_option("--panel", ck.panel, "observed panel CSV")->required();
  cck->add_option("--out", ck.out, "output CSV")->required();
  cck->add_option("--scales", ck.scales, "aggregation scales");
  cck->add_option("--mmpp-params", ck.mmpp_params,
                  "add rows simulated from a fitted MMPP (JSON path)");
  cck->add_option("--mmpp-length", ck.mmpp_length,
                  "length of the MMPP comparison series");
  cck->add_option("--t0", ck.t0, "grid origin");
  cck->add_option("--delta", ck.delta, "grid spacing");
  cck->add_option("--seed", ck.seed, "RNG seed");
  cck->callback([&]() { run_check(ck); });

  DiagArgs dg;
  auto* cdg = app.add_subcommand("diag", "chain diagnostics from a samples file");
  cdg->add_option("--samples", dg.samples, "samples CSV from fit")->required();
  cdg->add_option("--out", dg.out, "output JSON (default stdout)");
  cdg->callback([&]() { run_diag(dg); });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace frap
