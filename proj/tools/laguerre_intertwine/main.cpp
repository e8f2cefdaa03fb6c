#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "config.hpp"
#include "experiments.hpp"
#include "lagint/error.hpp"

namespace {

using namespace lagint;
using namespace lagint::experiments;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<std::size_t> n_samples;
  std::optional<double> t;
  std::optional<std::string> out;
  std::optional<int> n;
  std::optional<std::string> x;
  std::optional<double> dt;
  std::optional<int> panels;
  std::optional<int> order;
  std::optional<double> tol;
  std::optional<std::string> sampler;
  std::optional<std::string> fault;
  std::optional<std::string> relations;
  bool verbose = false;
};

void add_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "flat key = value configuration file");
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--alpha", o.alpha, "Laguerre parameter alpha");
  app.add_option("--n-samples", o.n_samples, "Monte Carlo draws per side");
  app.add_option("--t", o.t, "time");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--N", o.n, "number of particles");
  app.add_option("--x,--z", o.x, "anchor coordinates, comma separated");
  app.add_option("--dt", o.dt, "SDE step");
  app.add_option("--panels", o.panels, "quadrature panels per segment");
  app.add_option("--order", o.order, "Gauss-Legendre order");
  app.add_option("--tol", o.tol, "pass tolerance");
  app.add_option("--sampler,--kernel", o.sampler, "sampler name for the sample command");
  app.add_option("--relations", o.relations, "intertwine: main, shifted or all");
  app.add_flag("-v,--verbose", o.verbose, "print passing checks too");
  app.add_option("--fault", o.fault)->group("");
}

ExperimentConfig build_config(const std::string& experiment, const Overrides& o) {
  ExperimentConfig cfg;
  if (!o.config.empty()) load_config_file(o.config, cfg);
  cfg.experiment = experiment;
  if (o.seed) cfg.seed = *o.seed;
  if (o.alpha) cfg.alpha = *o.alpha;
  if (o.n_samples) cfg.n_samples = *o.n_samples;
  if (o.t) cfg.t = *o.t;
  if (o.out) cfg.out_dir = *o.out;
  if (o.n) cfg.n = *o.n;
  if (o.x) cfg.set("x", *o.x);
  if (o.dt) cfg.dt = *o.dt;
  if (o.panels) cfg.panels = *o.panels;
  if (o.order) cfg.order = *o.order;
  if (o.tol) cfg.tol = *o.tol;
  if (o.sampler) cfg.sampler = *o.sampler;
  if (o.fault) cfg.fault = *o.fault;
  return cfg;
}

IntertwineSet parse_set(const std::optional<std::string>& text) {
  if (!text || *text == "all") return IntertwineSet::all;
  if (*text == "main") return IntertwineSet::main;
  if (*text == "shifted") return IntertwineSet::shifted;
  throw ConfigError("relations must be main, shifted or all");
}

int run(const std::string& command, const Overrides& o) {
  const ExperimentConfig cfg = build_config(command, o);
  if (command == "sample") {
    run_sample(cfg);
    std::cout << "wrote " << (cfg.out_dir / "sample.csv").string() << "\n";
    return 0;
  }
  ExperimentResult result;
  if (command == "kernels-check") result = run_kernels_check(cfg);
  else if (command == "intertwine") result = run_intertwine(cfg, parse_set(o.relations));
  else if (command == "dual-check") result = run_dual_check(cfg);
  else if (command == "truncation") result = run_truncation(cfg);
  else if (command == "invariance") result = run_invariance(cfg);
  else if (command == "sde-vs-exact") result = run_sde_vs_exact(cfg);
  else throw ConfigError("unknown command " + command);
  result.experiment = command;
  write_result_csv(result, cfg);
  print_result(result, std::cout, !o.verbose);
  return result.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interlacing kernels and Laguerre process verification suite",
               "laguerre-intertwine"};
  app.require_subcommand(1);
  Overrides o;
  const char* commands[][2] = {
      {"kernels-check", "kernel normalization and composition by quadrature"},
      {"intertwine", "intertwining relations by nested quadrature"},
      {"dual-check", "dual kernel and h-transform identities"},
      {"truncation", "matrix truncation against the alpha-corner kernel"},
      {"invariance", "invariant measure pushed through the alpha-corner kernel"},
      {"sde-vs-exact", "Euler scheme against exact samplers"},
      {"sample", "write draws of a named sampler to CSV"},
  };
  for (auto& c : commands) add_options(*app.add_subcommand(c[0], c[1]), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
  }
  return 2;
}
