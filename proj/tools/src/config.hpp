#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amalgam/kdvb.hpp"
#include "amalgam/norms.hpp"
#include "amalgam/spectrum.hpp"
#include "amalgam/witness.hpp"

namespace amalgam::cli {

using nlohmann::json;

/// Reads and parses a JSON file; ConfigError on I/O or syntax problems.
json load_json(const std::string& path);

struct NormConfig {
  Spectrum spectrum;
  std::vector<std::string> norms{"amalgam"};
  AmalgamParams params;
};

struct IterateConfig {
  PiecewiseConstSpectrum spectrum;
  double t = 0.0;
  FrequencyGrid grid{-1.0, 1.0, 3};
  ClosedFormOptions options;
};

struct WitnessConfig {
  double t = 0.5;
  std::vector<int> Ns;
  AmalgamParams params;
  WitnessOptions options;
};

struct PartitionConfig {
  long points = 10000;
  unsigned long long seed = 1;
  double xi_min = -100.0;
  double xi_max = 100.0;
  double tolerance = 1e-12;
};

NormConfig parse_norm_config(const json& j);
IterateConfig parse_iterate_config(const json& j);
WitnessConfig parse_witness_config(const json& j);
PartitionConfig parse_partition_config(const json& j);

/// Number or "inf"; the usual p, q encoding in configs and JSON reports.
double parse_exponent(const json& j, const std::string& field);
json exponent_to_json(double v);

}  // namespace amalgam::cli
