#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "splitstep/config.hpp"
#include "splitstep/resonance.hpp"

namespace splitstep {

struct TrajectoryRecord {
  std::int64_t n = 0;
  double t = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double kinetic_tk = 0.0;
  double energy_hk = 0.0;
  /// Empty past the horizon or when no bound is claimed.
  std::optional<double> h1_lower_bound;
  /// Present for runs whose step resonates with the grid.
  std::optional<double> membership_defect;
};

struct Trajectory {
  PhysicalState initial;
  double tau = 0.0;
  std::vector<TrajectoryRecord> records;
};

/// Resonant: rational step with q | K (K/q even) and data for which the
/// step acts resonantly (V with vanishing commutator, or U^0 in W).
/// ResonantStepOnly: the step resonates with the grid but the data do not.
enum class Classification { kResonant, kResonantStepOnly, kNonResonant };

std::string to_string(Classification c);

struct ClassificationResult {
  Classification kind = Classification::kNonResonant;
  std::string reason;
};

ClassificationResult classify(const ModelSpec& model, const PhysicalState& u0,
                              const TimeStep& step, double tolerance = 1e-12);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual.
  double residual = 0.0;
};

/// Least squares y ~ slope * x + intercept.  Throws std::invalid_argument
/// for fewer than two points or constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Records with first <= n <= last.
struct Window {
  std::int64_t first = 0;
  std::int64_t last = 0;
};

/// Fit of h1 against t over the window.
LineFit fit_drift_slope(std::span<const TrajectoryRecord> records, Window window);

struct ExperimentSummary {
  nlohmann::json config;
  BoundConstants bounds;
  AssembledConstants assembled;
  ClassificationResult classification;
  double cfl = 0.0;  ///< tau K^2
  std::int64_t n_steps = 0;
  std::optional<LineFit> drift_fit;
  double l2_relative_variation = 0.0;
  double h1_growth = 0.0;  ///< max_n h1 / h1_0 (0 when h1_0 = 0)
  /// min over n within horizon of measured - bound; nullopt when not claimed.
  std::optional<double> h1_bound_margin;
  std::optional<double> energy_bound_margin;
  /// max_n max_k |U^n_k - closed form_k| for resonant runs.
  std::optional<double> closed_form_error;
};

struct ExperimentResult {
  Trajectory trajectory;
  ExperimentSummary summary;
};

/// Runs the configured experiment.  Deterministic.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Resonant-run closed form after n steps: exp(-i sigma n tau |U^0|^2) U^0
/// (cubic) or the free flow over n steps of exp(-i n tau V) U^0 (linear).
PhysicalState closed_form(const ModelSpec& model, const PhysicalState& u0, const TimeStep& step,
                          std::int64_t n);

nlohmann::json to_json(const BoundConstants& b);
nlohmann::json to_json(const AssembledConstants& a);
nlohmann::json to_json(const ExperimentSummary& s);

/// Version tags of the conventions every output depends on.
nlohmann::json design_tags();

}  // namespace splitstep
