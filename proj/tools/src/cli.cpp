#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "amalgam/errors.hpp"
#include "amalgam/kdvb.hpp"
#include "amalgam/modulation.hpp"
#include "amalgam/parallel.hpp"
#include "config.hpp"

namespace amalgam::cli {

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  bool oracle = false;
  int quad_density = 0;  // 0: keep the config value
  int parallel = 1;
};

// Successful command output plus the exit code to return after writing it.
struct Result {
  std::string text;
  int code = kSuccess;
  std::vector<std::string> notes;
};

std::string num(double v) { return fmt::format("{:.17g}", v == 0.0 ? 0.0 : v); }

json num_json(double v) { return std::isfinite(v) ? json(v) : json(num(v)); }

double apply_norm(const std::string& name, const Spectrum& f, const AmalgamParams& params) {
  if (name == "amalgam") return amalgam_norm(f, params);
  if (name == "fourier-lebesgue") return fourier_lebesgue_norm(f, params.q, params.s, params.quad_density);
  if (name == "sobolev") return sobolev_norm(f, params.s, params.quad_density);
  return modulation_norm(f, params, build_partition());
}

Result cmd_norm(const Options& o) {
  auto c = parse_norm_config(load_json(o.config));
  if (o.quad_density > 0) c.params.quad_density = o.quad_density;
  c.params.validate();
  std::vector<double> values;
  for (const auto& n : c.norms) values.push_back(apply_norm(n, c.spectrum, c.params));

  Result r;
  if (o.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      rows.push_back({{"norm", c.norms[i]},
                      {"p", exponent_to_json(c.params.p)},
                      {"q", exponent_to_json(c.params.q)},
                      {"s", c.params.s},
                      {"value", values[i]}});
    }
    r.text = json{{"command", "norm"}, {"results", rows}}.dump(2) + "\n";
  } else {
    r.text = "norm,p,q,s,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      r.text += fmt::format("{},{},{},{},{}\n", c.norms[i], num(c.params.p), num(c.params.q), num(c.params.s),
                            num(values[i]));
    }
  }
  return r;
}

Result cmd_iterate(const Options& o) {
  auto c = parse_iterate_config(load_json(o.config));
  if (o.quad_density > 0) c.options.quad_density = o.quad_density;

  const auto hull = c.spectrum.support();
  if (!hull.empty()) {
    const double lo = 2.0 * hull.intervals().front().lo;
    const double hi = 2.0 * hull.intervals().back().hi;
    if (lo < c.grid.xi_min() || hi > c.grid.xi_max()) {
      throw SupportOverflow(fmt::format("convolution support [{}, {}] is not covered by the grid [{}, {}]", num(lo),
                                        num(hi), num(c.grid.xi_min()), num(c.grid.xi_max())));
    }
  }

  const std::size_t n = c.grid.size();
  std::vector<Complex> values(n);
  std::vector<double> mismatch(n, 0.0);
  parallel_for(n, o.parallel, [&](std::size_t k) {
    const double xi = c.grid.at(k);
    values[k] = second_iterate_closed_form(c.spectrum, c.t, xi, c.options);
    if (o.oracle) {
      const auto ref = second_iterate_oracle(c.spectrum, c.t, xi);
      mismatch[k] = std::abs(values[k] - ref.value) / std::max(std::abs(values[k]), 1e-10);
    }
  });
  const double worst = o.oracle ? *std::max_element(mismatch.begin(), mismatch.end()) : 0.0;

  Result r;
  if (o.format == "json") {
    json rows = json::array();
    for (std::size_t k = 0; k < n; ++k) {
      json row{{"xi", c.grid.at(k)}, {"re", values[k].real()}, {"im", values[k].imag()}, {"abs", std::abs(values[k])}};
      if (o.oracle) row["oracle_mismatch"] = mismatch[k];
      rows.push_back(row);
    }
    json doc{{"command", "iterate"}, {"t", c.t}, {"rows", rows}};
    if (o.oracle) doc["max_oracle_mismatch"] = worst;
    r.text = doc.dump(2) + "\n";
  } else {
    r.text = o.oracle ? "xi,re,im,abs,oracle_mismatch\n" : "xi,re,im,abs\n";
    for (std::size_t k = 0; k < n; ++k) {
      r.text += fmt::format("{},{},{},{}", num(c.grid.at(k)), num(values[k].real()), num(values[k].imag()),
                            num(std::abs(values[k])));
      r.text += o.oracle ? fmt::format(",{}\n", num(mismatch[k])) : "\n";
    }
  }
  if (o.oracle && !(worst < 1e-6)) {
    r.code = kVerificationFailed;
    r.notes.push_back(fmt::format("oracle mismatch {} exceeds 1e-6", num(worst)));
  }
  return r;
}

Result cmd_witness(const Options& o, bool verify) {
  auto c = parse_witness_config(load_json(o.config));
  if (o.quad_density > 0) {
    c.params.quad_density = o.quad_density;
    c.options.quad_density = o.quad_density;
  }
  c.options.parallel = o.parallel;
  const auto sweep = discontinuity_report(c.t, c.Ns, c.params, c.options);
  const Verdict verdict = verify ? sweep.verdict : Verdict::inapplicable;

  Result r;
  r.notes = sweep.warnings;
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& w : sweep.reports) {
      rows.push_back({{"N", w.N},
                      {"t", w.t},
                      {"p", exponent_to_json(w.p)},
                      {"q", exponent_to_json(w.q)},
                      {"s", w.s},
                      {"phi_norm", w.phi_norm},
                      {"a2_box0_lower", w.a2_box0_lower},
                      {"kxi_min_measure", w.kxi_min_measure},
                      {"normalized_integral_min", num_json(w.normalized_integral_min)},
                      {"threshold_ok", w.threshold_ok},
                      {"verdict", to_string(verdict)}});
    }
    r.text = json{{"command", verify ? "witness verify" : "witness scan"},
                  {"verdict", to_string(verdict)},
                  {"warnings", sweep.warnings},
                  {"reports", rows}}
                 .dump(2) +
             "\n";
  } else {
    r.text = "N,t,p,q,s,phi_norm,a2_box0_lower,kxi_min_measure,threshold_ok,verdict\n";
    for (const auto& w : sweep.reports) {
      r.text += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", w.N, num(w.t), num(w.p), num(w.q), num(w.s),
                            num(w.phi_norm), num(w.a2_box0_lower), num(w.kxi_min_measure),
                            w.threshold_ok ? "true" : "false", to_string(verdict));
    }
  }
  if (verify) {
    if (sweep.verdict == Verdict::inapplicable) {
      r.code = kUsageError;
      r.notes.push_back("witness verify needs s < -1");
    } else if (sweep.verdict == Verdict::fail) {
      r.code = kVerificationFailed;
      r.notes.push_back("witness check failed: data do not vanish or the iterate floor collapses");
    }
  }
  return r;
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

Result cmd_partition(const Options& o) {
  const auto c = parse_partition_config(o.config.empty() ? json::object() : load_json(o.config));
  const auto windows = build_partition();
  std::mt19937_64 rng(c.seed);
  double worst = 0.0, worst_at = 0.0;
  for (long i = 0; i < c.points; ++i) {
    const double xi = c.xi_min + (c.xi_max - c.xi_min) * unit_draw(rng);
    const double e = std::abs(windows.partition_sum(xi) - 1.0);
    if (e > worst) {
      worst = e;
      worst_at = xi;
    }
  }
  const bool pass = worst <= c.tolerance;
  Result r;
  if (o.format == "json") {
    r.text = json{{"command", "partition check"},
                  {"points", c.points},
                  {"max_error", worst},
                  {"worst_xi", worst_at},
                  {"tolerance", c.tolerance},
                  {"pass", pass}}
                 .dump(2) +
             "\n";
  } else {
    r.text = "points,max_error,worst_xi,tolerance,pass\n" +
             fmt::format("{},{},{},{},{}\n", c.points, num(worst), num(worst_at), num(c.tolerance), pass);
  }
  if (!pass) {
    r.code = kVerificationFailed;
    r.notes.push_back("partition of unity error exceeds tolerance");
  }
  return r;
}

void add_common(CLI::App* cmd, Options& o, bool config_required) {
  auto* cfg = cmd->add_option("--config", o.config, "JSON configuration file");
  if (config_required) cfg->required();
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
  cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
}

void add_tuning(CLI::App* cmd, Options& o) {
  cmd->add_option("--quad-density", o.quad_density, "Gauss panels per unit length")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--parallel", o.parallel, "worker threads")->check(CLI::Range(1, 256));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier amalgam norms, KdV-Burgers iterates and the phi_N witness", "amalgam"};
  app.require_subcommand(1);
  Options o;

  auto* norm = app.add_subcommand("norm", "norms of a spectrum");
  add_common(norm, o, true);
  norm->add_option("--quad-density", o.quad_density, "Gauss panels per unit length")->check(CLI::Range(2, 1 << 20));

  auto* iterate = app.add_subcommand("iterate", "second Picard iterate on a grid");
  add_common(iterate, o, true);
  add_tuning(iterate, o);
  iterate->add_flag("--oracle", o.oracle, "check every point against the time-quadrature oracle");

  auto* witness = app.add_subcommand("witness", "phi_N sweeps");
  witness->require_subcommand(1);
  auto* scan = witness->add_subcommand("scan", "report only");
  auto* verify = witness->add_subcommand("verify", "report and check the discontinuity verdict");
  for (auto* cmd : {scan, verify}) {
    add_common(cmd, o, true);
    add_tuning(cmd, o);
  }

  auto* partition = app.add_subcommand("partition", "smooth window family");
  partition->require_subcommand(1);
  auto* check = partition->add_subcommand("check", "partition of unity at random points");
  add_common(check, o, false);

  std::vector<std::string> argv_store{"amalgam"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  Result r;
  try {
    if (norm->parsed()) {
      r = cmd_norm(o);
    } else if (iterate->parsed()) {
      r = cmd_iterate(o);
    } else if (scan->parsed() || verify->parsed()) {
      r = cmd_witness(o, verify->parsed());
    } else {
      r = cmd_partition(o);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  if (o.out.empty()) {
    out << r.text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file || !(file << r.text)) {
      err << "error: cannot write '" << o.out << "'\n";
      return kUsageError;
    }
  }
  for (const auto& note : r.notes) err << (r.code == kSuccess ? "warning: " : "error: ") << note << "\n";
  return r.code;
}

}  // namespace amalgam::cli
