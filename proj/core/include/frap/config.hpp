#pragma once

#include <cstdint>
#include <string>

#include "frap/model.hpp"

namespace frap {

// Run configuration: built-in defaults, overridden by an optional JSON file,
// overridden in turn by explicit command-line flags.
struct RunConfig {
  McmcConfig mcmc;
  FrapPriors priors;
  int classes = 1;

  static RunConfig defaults() { return {}; }
  // Applies the (possibly partial) JSON object on top of the defaults.
  // Unknown keys are rejected so typos do not silently fall back.
  static RunConfig from_json(const std::string& text);
  static RunConfig from_json_file(const std::string& path);

  // Canonical serialization (sorted keys); identical configs serialize
  // identically, which makes the hash a run fingerprint.
  std::string to_json() const;
  std::uint64_t hash() const;
};

}  // namespace frap
