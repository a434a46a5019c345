#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "splitstep/config.hpp"
#include "splitstep/experiment.hpp"

namespace splitstep {

struct SweepRow {
  long long p = 0;
  long long q = 0;
  int power = 1;
  int modes = 0;
  double tau = 0.0;
  double cfl = 0.0;
  std::string classification;
  std::optional<std::int64_t> horizon;
  std::int64_t n_steps = 0;
  double l2_variation = 0.0;
  double h1_growth = 0.0;
  std::optional<double> drift_slope;
  std::optional<double> h1_bound_margin;
  /// Empty on success.
  std::string error;
};

/// The experiment configs of a sweep, in grid order (p fastest, then
/// power, then q, then K or kappa).
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& config);

/// Runs every combination on up to `workers` threads.  Row order matches
/// expand_sweep regardless of scheduling.  When out_dir is given each run's
/// trajectory CSV is written there as well.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, unsigned workers = 0,
                                const std::optional<std::filesystem::path>& out_dir = std::nullopt);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace splitstep
