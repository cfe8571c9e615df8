#include "frap/config.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "frap/io.hpp"

namespace frap {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument("config: unknown key '" + item.key() +
                                  "' in " + where);
  }
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& text) {
  RunConfig cfg;
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  reject_unknown(j, {"mcmc", "priors", "classes"}, "top level");
  if (j.contains("mcmc")) {
    const auto& m = j["mcmc"];
    reject_unknown(m,
                   {"iterations", "burn_in", "thin", "seed", "latent_sweeps",
                    "adapt_interval", "target_accept", "initial_scale", "nu"},
                   "mcmc");
    cfg.mcmc.iterations = m.value("iterations", cfg.mcmc.iterations);
    cfg.mcmc.burn_in = m.value("burn_in", cfg.mcmc.burn_in);
    cfg.mcmc.thin = m.value("thin", cfg.mcmc.thin);
    cfg.mcmc.seed = m.value("seed", cfg.mcmc.seed);
    cfg.mcmc.latent_sweeps = m.value("latent_sweeps", cfg.mcmc.latent_sweeps);
    cfg.mcmc.adapt_interval =
        m.value("adapt_interval", cfg.mcmc.adapt_interval);
    cfg.mcmc.target_accept = m.value("target_accept", cfg.mcmc.target_accept);
    cfg.mcmc.initial_scale = m.value("initial_scale", cfg.mcmc.initial_scale);
    cfg.mcmc.nu = m.value("nu", cfg.mcmc.nu);
  }
  if (j.contains("priors")) {
    const auto& p = j["priors"];
    reject_unknown(
        p, {"a_tau", "b_tau", "beta_prior_sd", "eta_prior_sd", "lambda"},
        "priors");
    cfg.priors.a_tau = p.value("a_tau", cfg.priors.a_tau);
    cfg.priors.b_tau = p.value("b_tau", cfg.priors.b_tau);
    cfg.priors.beta_prior_sd =
        p.value("beta_prior_sd", cfg.priors.beta_prior_sd);
    cfg.priors.eta_prior_sd = p.value("eta_prior_sd", cfg.priors.eta_prior_sd);
    cfg.priors.lambda = p.value("lambda", cfg.priors.lambda);
  }
  cfg.classes = j.value("classes", cfg.classes);
  return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  return from_json(read_text(path));
}

std::string RunConfig::to_json() const {
  json j;
  j["classes"] = classes;
  j["mcmc"] = {{"iterations", mcmc.iterations},
               {"burn_in", mcmc.burn_in},
               {"thin", mcmc.thin},
               {"seed", mcmc.seed},
               {"latent_sweeps", mcmc.latent_sweeps},
               {"adapt_interval", mcmc.adapt_interval},
               {"target_accept", mcmc.target_accept},
               {"initial_scale", mcmc.initial_scale},
               {"nu", mcmc.nu}};
  j["priors"] = {{"a_tau", priors.a_tau},
                 {"b_tau", priors.b_tau},
                 {"beta_prior_sd", priors.beta_prior_sd},
                 {"eta_prior_sd", priors.eta_prior_sd},
                 {"lambda", priors.lambda}};
  return j.dump(2);
}

std::uint64_t RunConfig::hash() const {
  // FNV-1a over the canonical serialization
  const std::string s = to_json();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace frap
