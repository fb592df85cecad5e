#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "amalgam/errors.hpp"

namespace amalgam::cli {

namespace {

void allow_only(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

const json& require(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field + ": expected a finite number");
  return v;
}

long integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field + ": expected an integer");
  return j.get<long>();
}

FrequencyGrid parse_grid(const json& j, const std::string& where) {
  allow_only(j, where, {"xi_min", "xi_max", "num_points"});
  const double lo = number(require(j, where, "xi_min"), where + ".xi_min");
  const double hi = number(require(j, where, "xi_max"), where + ".xi_max");
  const long n = integer(require(j, where, "num_points"), where + ".num_points");
  if (n < 2) throw ConfigError(where + ".num_points: need at least 2 points");
  if (!(lo < hi)) throw ConfigError(where + ": need xi_min < xi_max");
  return FrequencyGrid(lo, hi, static_cast<std::size_t>(n));
}

Complex parse_complex(const json& j, const std::string& field) {
  if (j.is_number()) return {number(j, field), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
  throw ConfigError(field + ": expected a number or [re, im]");
}

PiecewiseConstSpectrum parse_pieces(const json& j, const std::string& where) {
  const json& list = require(j, where, "pieces");
  if (!list.is_array()) throw ConfigError(where + ".pieces: expected an array");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + ".pieces[" + std::to_string(i) + "]";
    allow_only(list[i], at, {"lo", "hi", "amplitude"});
    pieces.push_back({{number(require(list[i], at, "lo"), at + ".lo"), number(require(list[i], at, "hi"), at + ".hi")},
                      parse_complex(require(list[i], at, "amplitude"), at + ".amplitude")});
  }
  bool real_field = false;
  if (j.contains("real_valued_field")) {
    if (!j["real_valued_field"].is_boolean()) throw ConfigError(where + ".real_valued_field: expected a boolean");
    real_field = j["real_valued_field"].get<bool>();
  }
  try {
    return PiecewiseConstSpectrum(std::move(pieces), real_field);
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

int parse_scale(const json& j, const std::string& field) {
  const long n = integer(j, field);
  if (n < 1 || n > 1'000'000'000L) throw ConfigError(field + ": expected an integer N >= 1");
  return static_cast<int>(n);
}

// {"phi_N": N} | {"pieces": [...], "real_valued_field": b} | {"grid": {...}, "samples": [...]}
Spectrum parse_spectrum(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  if (j.contains("phi_N")) {
    allow_only(j, where, {"phi_N"});
    return make_phi_N(parse_scale(j["phi_N"], where + ".phi_N"));
  }
  if (j.contains("pieces")) {
    allow_only(j, where, {"pieces", "real_valued_field"});
    return parse_pieces(j, where);
  }
  if (j.contains("samples")) {
    allow_only(j, where, {"grid", "samples"});
    const auto grid = parse_grid(require(j, where, "grid"), where + ".grid");
    const json& list = j["samples"];
    if (!list.is_array()) throw ConfigError(where + ".samples: expected an array");
    if (list.size() != grid.size()) {
      throw ConfigError(where + ".samples: expected " + std::to_string(grid.size()) + " values, got " +
                        std::to_string(list.size()));
    }
    std::vector<Complex> values;
    for (std::size_t i = 0; i < list.size(); ++i) {
      values.push_back(parse_complex(list[i], where + ".samples[" + std::to_string(i) + "]"));
    }
    return SampledSpectrum(grid, std::move(values));
  }
  throw ConfigError(where + ": expected one of 'phi_N', 'pieces' or 'samples'");
}

void parse_params(const json& j, AmalgamParams& params) {
  if (j.contains("p")) params.p = parse_exponent(j["p"], "p");
  if (j.contains("q")) params.q = parse_exponent(j["q"], "q");
  if (j.contains("s")) params.s = number(j["s"], "s");
  if (j.contains("quad_density")) params.quad_density = static_cast<int>(integer(j["quad_density"], "quad_density"));
  params.validate();
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

double parse_exponent(const json& j, const std::string& field) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
    throw ConfigError(field + ": expected a number >= 1 or \"inf\"");
  }
  if (!j.is_number()) throw ConfigError(field + ": expected a number >= 1 or \"inf\"");
  const double v = j.get<double>();
  if (!(v >= 1.0)) throw ConfigError(field + ": expected a number >= 1 or \"inf\"");
  return v;
}

json exponent_to_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

NormConfig parse_norm_config(const json& j) {
  allow_only(j, "config", {"spectrum", "norms", "p", "q", "s", "quad_density"});
  NormConfig c;
  c.spectrum = parse_spectrum(require(j, "config", "spectrum"), "spectrum");
  if (j.contains("norms")) {
    if (!j["norms"].is_array() || j["norms"].empty()) throw ConfigError("norms: expected a non-empty array");
    c.norms.clear();
    static const std::set<std::string> known{"amalgam", "fourier-lebesgue", "sobolev", "modulation"};
    for (const auto& n : j["norms"]) {
      if (!n.is_string() || !known.count(n.get<std::string>())) {
        throw ConfigError("norms: expected entries among amalgam, fourier-lebesgue, sobolev, modulation");
      }
      c.norms.push_back(n.get<std::string>());
    }
  }
  parse_params(j, c.params);
  return c;
}

IterateConfig parse_iterate_config(const json& j) {
  allow_only(j, "config", {"spectrum", "t", "grid", "epsilon", "quad_density"});
  IterateConfig c;
  auto spectrum = parse_spectrum(require(j, "config", "spectrum"), "spectrum");
  if (!std::holds_alternative<PiecewiseConstSpectrum>(spectrum)) {
    throw ConfigError("spectrum: iterate needs piecewise-constant data ('phi_N' or 'pieces')");
  }
  c.spectrum = std::get<PiecewiseConstSpectrum>(spectrum);
  c.t = number(require(j, "config", "t"), "t");
  if (c.t < 0.0) throw ConfigError("t: time must be nonnegative");
  c.grid = parse_grid(require(j, "config", "grid"), "grid");
  if (j.contains("epsilon")) {
    c.options.epsilon = number(j["epsilon"], "epsilon");
    if (!(c.options.epsilon > 0.0)) throw ConfigError("epsilon: must be positive");
  }
  if (j.contains("quad_density")) c.options.quad_density = static_cast<int>(integer(j["quad_density"], "quad_density"));
  if (c.options.quad_density < 2) throw ConfigError("quad_density: must be at least 2");
  return c;
}

WitnessConfig parse_witness_config(const json& j) {
  allow_only(j, "config", {"t", "N", "p", "q", "s", "quad_density", "box_panels", "xi_samples"});
  WitnessConfig c;
  c.t = number(require(j, "config", "t"), "t");
  const json& ns = require(j, "config", "N");
  if (!ns.is_array()) throw ConfigError("N: expected an array of integers");
  for (std::size_t i = 0; i < ns.size(); ++i) c.Ns.push_back(parse_scale(ns[i], "N[" + std::to_string(i) + "]"));
  c.params.s = -1.5;
  parse_params(j, c.params);
  c.options.quad_density = c.params.quad_density;
  if (j.contains("box_panels")) c.options.box_panels = static_cast<int>(integer(j["box_panels"], "box_panels"));
  if (j.contains("xi_samples")) c.options.xi_samples = static_cast<int>(integer(j["xi_samples"], "xi_samples"));
  if (c.options.box_panels < 2) throw ConfigError("box_panels: must be at least 2");
  if (c.options.xi_samples < 1) throw ConfigError("xi_samples: must be positive");
  return c;
}

PartitionConfig parse_partition_config(const json& j) {
  allow_only(j, "config", {"points", "seed", "xi_min", "xi_max", "tolerance"});
  PartitionConfig c;
  if (j.contains("points")) c.points = integer(j["points"], "points");
  if (c.points < 1) throw ConfigError("points: must be positive");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
    c.seed = j["seed"].get<unsigned long long>();
  }
  if (j.contains("xi_min")) c.xi_min = number(j["xi_min"], "xi_min");
  if (j.contains("xi_max")) c.xi_max = number(j["xi_max"], "xi_max");
  if (!(c.xi_min < c.xi_max)) throw ConfigError("xi_min: need xi_min < xi_max");
  if (j.contains("tolerance")) c.tolerance = number(j["tolerance"], "tolerance");
  return c;
}

}  // namespace amalgam::cli
