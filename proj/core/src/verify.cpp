#include "splitstep/verify.hpp"

#include <algorithm>
#include <cmath>

#include "splitstep/sweep.hpp"

namespace splitstep {

SuiteOptions suite_options(const ExperimentConfig& config) {
  SuiteOptions s;
  s.seed = config.seed;
  s.tolerances = config.tolerances;
  return s;
}

std::vector<Check> run_checks(const ExperimentConfig& config, const ExperimentResult& result) {
  const ExperimentSummary& s = result.summary;
  const bool resonant = s.classification.kind == Classification::kResonant;
  const std::string why = "classified " + to_string(s.classification.kind) + ": " + s.classification.reason;
  const double slack = config.tolerance("bound_slack");
  std::vector<Check> out;
  out.push_back(check_at_most("run.l2_conservation", s.l2_relative_variation, config.tolerance("l2_drift"),
                              "the split step preserves the discrete l2 norm"));
  if (resonant && s.closed_form_error) {
    out.push_back(check_at_most("run.closed_form", *s.closed_form_error, config.tolerance("closed_form"),
                                "resonant iterates equal the closed-form phase solution"));
  } else {
    out.push_back(not_claimed("run.closed_form", 0.0, config.tolerance("closed_form"),
                              "resonant iterates equal the closed-form phase solution", why));
  }
  if (resonant && s.h1_bound_margin) {
    out.push_back(check_at_least("run.h1_drift_bound", *s.h1_bound_margin, -slack,
                                 "h1 stays above the drift lower bound within the horizon"));
    out.push_back(check_at_least("run.energy_bound", *s.energy_bound_margin, -slack,
                                 "energy stays above the quadratic lower bound within the horizon"));
  } else {
    out.push_back(not_claimed("run.h1_drift_bound", 0.0, -slack,
                              "h1 stays above the drift lower bound within the horizon", why));
    out.push_back(not_claimed("run.energy_bound", 0.0, -slack,
                              "energy stays above the quadratic lower bound within the horizon", why));
  }
  const std::int64_t window_last =
      s.bounds.horizon_steps ? std::min(*s.bounds.horizon_steps, s.n_steps) : s.n_steps;
  if (resonant && s.drift_fit && !s.bounds.no_drift && window_last >= 2) {
    out.push_back(check_at_least("run.drift_slope", s.drift_fit->slope, s.assembled.h1_slope,
                                 "fitted h1 slope within the horizon exceeds the assembled slope"));
  } else {
    out.push_back(not_claimed("run.drift_slope", s.drift_fit ? s.drift_fit->slope : 0.0, s.assembled.h1_slope,
                              "fitted h1 slope within the horizon exceeds the assembled slope",
                              resonant ? "fewer than three records within the horizon" : why));
  }
  if (!resonant) {
    out.push_back(not_claimed("run.control_growth", s.h1_growth, config.tolerance("control_growth_factor"),
                              "h1 growth of a control run, reported only",
                              "max h1 / h1_0 over " + std::to_string(s.n_steps) + " steps"));
  }
  return out;
}

VerificationReport verify_suite(const ExperimentConfig& config, const VerifyOptions& options) {
  VerificationReport report;
  std::vector<ExperimentConfig> runs;
  try {
    runs = config.sweep ? expand_sweep(config) : std::vector<ExperimentConfig>{config};
  } catch (const std::exception& e) {
    report.add({"run.experiment", CheckStatus::kFail, 0.0, 0.0, "n/a", "the configured run completes",
                e.what()});
  }
  for (const auto& run : runs) {
    const std::string prefix = config.sweep ? run.name + "." : std::string();
    try {
      const ExperimentResult result = run_experiment(run);
      for (Check c : run_checks(run, result)) {
        c.name = prefix + c.name;
        report.add(std::move(c));
      }
    } catch (const std::exception& e) {
      report.add({prefix + "run.experiment", CheckStatus::kFail, 0.0, 0.0, "n/a",
                  "the configured run completes", e.what()});
    }
  }
  if (options.include_invariants) report.append(invariant_checks(options.suite));
  if (options.include_acceptance) report.append(acceptance_suite(options.suite));
  return report;
}

}  // namespace splitstep
