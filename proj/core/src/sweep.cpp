#include "splitstep/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "splitstep/report_io.hpp"

namespace splitstep {

std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& config) {
  if (!config.sweep) throw ConfigError("/sweep", "config has no sweep section");
  const SweepGrid& g = *config.sweep;
  std::vector<ExperimentConfig> out;
  const auto& sizes = g.kappa.empty() ? g.modes : g.kappa;
  for (int size : sizes) {
    for (long long q : g.q) {
      for (int power : g.power) {
        for (long long p : g.p) {
          ExperimentConfig c = config;
          c.sweep.reset();
          c.rational_step = ResonantStep(p, q, power);
          c.real_tau = c.rational_step->tau();
          c.modes = g.kappa.empty() ? size : static_cast<int>(size * q);
          c.name = config.name + "_p" + std::to_string(p) + "_q" + std::to_string(q) + "_e" +
                   std::to_string(power) + "_K" + std::to_string(c.modes);
          c.csv_output = c.name + ".csv";
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

namespace {

SweepRow run_one(const ExperimentConfig& c, const std::optional<std::filesystem::path>& out_dir) {
  SweepRow row;
  row.p = c.rational_step->p();
  row.q = c.rational_step->q();
  row.power = c.rational_step->power();
  row.modes = c.modes;
  row.tau = c.real_tau;
  row.cfl = c.real_tau * c.modes * c.modes;
  try {
    const ExperimentResult r = run_experiment(c);
    const ExperimentSummary& s = r.summary;
    row.classification = to_string(s.classification.kind);
    row.horizon = s.bounds.horizon_steps;
    row.n_steps = s.n_steps;
    row.l2_variation = s.l2_relative_variation;
    row.h1_growth = s.h1_growth;
    if (s.drift_fit) row.drift_slope = s.drift_fit->slope;
    row.h1_bound_margin = s.h1_bound_margin;
    if (out_dir) emit_csv(r.trajectory, *out_dir / c.csv_output);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, unsigned workers,
                                const std::optional<std::filesystem::path>& out_dir) {
  const std::vector<ExperimentConfig> configs = expand_sweep(config);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(configs.size(), 1)));
  std::vector<SweepRow> rows(configs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < configs.size(); i = next++) rows[i] = run_one(configs[i], out_dir);
    }));
  }
  for (auto& f : pool) f.get();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "p,q,power,K,tau,cfl_tau_K2,classification,horizon_steps,n_steps,l2_variation,h1_growth,"
      "drift_slope,h1_bound_margin,error\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
  for (const auto& r : rows) {
    out += std::to_string(r.p) + ',' + std::to_string(r.q) + ',' + std::to_string(r.power) + ',' +
           std::to_string(r.modes) + ',' + format_real(r.tau) + ',' + format_real(r.cfl) + ',' +
           r.classification + ',' + (r.horizon ? std::to_string(*r.horizon) : std::string()) + ',' +
           std::to_string(r.n_steps) + ',' + format_real(r.l2_variation) + ',' + format_real(r.h1_growth) +
           ',' + opt(r.drift_slope) + ',' + opt(r.h1_bound_margin) + ',';
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += err + '\n';
  }
  return out;
}

}  // namespace splitstep
