#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splitstep/config.hpp"
#include "splitstep/experiment.hpp"
#include "splitstep/report_io.hpp"
#include "splitstep/sweep.hpp"
#include "splitstep/verify.hpp"

namespace fs = std::filesystem;
using namespace splitstep;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tolerances;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out-dir", c.out_dir, "Directory for CSV/JSON outputs");
  cmd->add_option("--seed", c.seed, "Seed for randomized checks");
  cmd->add_option("--tolerance", c.tolerances, "Tolerance override name=value (repeatable)");
}

ExperimentConfig load(const Common& c) {
  ExperimentConfig config = load_config(c.config_path);
  if (c.seed) config.seed = *c.seed;
  for (const auto& t : c.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("--tolerance", "expected name=value, got \"" + t + "\"");
    config.set_tolerance(t.substr(0, eq), parse_real(nlohmann::json(t.substr(eq + 1)), "--tolerance " + t));
  }
  return config;
}

int print_checks(const std::vector<Check>& checks) {
  VerificationReport report;
  report.append(checks);
  std::cout << report.render();
  return report.passed() ? 0 : 1;
}

int simulate(const Common& c) {
  const ExperimentConfig config = load(c);
  const ExperimentResult result = run_experiment(config);
  const fs::path out(c.out_dir);
  emit_csv(result.trajectory, out / config.csv_output);
  emit_json(result.summary, out / config.json_output);
  const ExperimentSummary& s = result.summary;
  std::cout << config.name << ": " << s.n_steps << " steps, " << to_string(s.classification.kind)
            << ", tau K^2 = " << format_real(s.cfl) << "\n"
            << "wrote " << (out / config.csv_output).string() << " and " << (out / config.json_output).string()
            << "\n";
  return print_checks(run_checks(config, result));
}

int verify(const Common& c, bool skip_acceptance) {
  const ExperimentConfig config = load(c);
  VerifyOptions options;
  options.suite = suite_options(config);
  options.include_acceptance = !skip_acceptance;
  const VerificationReport report = verify_suite(config, options);
  std::cout << report.render();
  emit_json(report.to_json(), fs::path(c.out_dir) / (config.name + "_verification.json"));
  return report.passed() ? 0 : 1;
}

int sweep(const Common& c, unsigned workers) {
  const ExperimentConfig config = load(c);
  const fs::path out(c.out_dir);
  const auto rows = run_sweep(config, workers, out);
  const std::string csv = sweep_csv(rows);
  write_text(out / (config.name + "_sweep.csv"), csv);
  std::cout << csv;
  int failures = 0;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      std::cerr << "run p=" << r.p << " q=" << r.q << " K=" << r.modes << " failed: " << r.error << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

int bounds(const Common& c) {
  const ExperimentConfig config = load(c);
  const ModelSpec model = config.model();
  const PhysicalState u0 = config.initial_state();
  const TimeStep step = config.step();
  const BoundConstants bc = bound_constants(model, u0, step);
  nlohmann::json j;
  j["config"] = config.to_json();
  j["classification"] = to_string(classify(model, u0, step, config.tolerance("commutator")).kind);
  j["bound_constants"] = to_json(bc);
  j["assembled_constants"] = to_json(assembled_constants(bc));
  j["cfl_tau_K2"] = step.tau() * config.modes * config.modes;
  emit_json(j, fs::path(c.out_dir) / (config.name + "_bounds.json"));
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-step Fourier simulator and resonance verification harness"};
  app.require_subcommand(1);
  Common common;
  bool skip_acceptance = false;
  unsigned workers = 0;

  auto* sim = app.add_subcommand("simulate", "Run one experiment and write its trajectory and summary");
  add_common(sim, common);
  auto* ver = app.add_subcommand("verify", "Run the experiment checks, invariants and acceptance criteria");
  add_common(ver, common);
  ver->add_flag("--skip-acceptance", skip_acceptance, "Only run the experiment and invariant checks");
  auto* swp = app.add_subcommand("sweep", "Run a parameter sweep over (p, q, power, K)");
  add_common(swp, common);
  swp->add_option("--workers", workers, "Parallel workers (default: hardware threads)");
  auto* bnd = app.add_subcommand("bounds", "Print the bound constants of an experiment without running it");
  add_common(bnd, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return simulate(common);
    if (ver->parsed()) return verify(common, skip_acceptance);
    if (swp->parsed()) return sweep(common, workers);
    if (bnd->parsed()) return bounds(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalBlowup& e) {
    std::cerr << "numerical blowup at step " << e.step() << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
