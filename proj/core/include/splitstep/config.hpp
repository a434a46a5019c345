#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "splitstep/flows.hpp"
#include "splitstep/function_spec.hpp"
#include "splitstep/model.hpp"
#include "splitstep/step.hpp"

namespace splitstep {

/// Config validation failure; `field()` is a JSON-pointer-like path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Equation { kLinear, kCubic };

/// Parameter grid for `sweep`; every combination is one experiment with
/// K = kappa * q (or each listed K when `modes` is used instead of kappa).
struct SweepGrid {
  std::vector<long long> p;
  std::vector<long long> q;
  std::vector<int> power;
  std::vector<int> kappa;
  std::vector<int> modes;
};

struct ExperimentConfig {
  std::string name = "experiment";
  Equation equation = Equation::kCubic;
  int sigma = 1;
  int modes = 4;
  std::optional<ResonantStep> rational_step;
  double real_tau = 0.0;
  /// nullopt: run exactly up to the drift horizon.
  std::optional<std::int64_t> n_steps;
  Splitting splitting = Splitting::kLie;
  std::string csv_output = "trajectory.csv";
  std::string json_output = "summary.json";
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 20240501;
  std::optional<SweepGrid> sweep;
  /// Raw function descriptions, resolved against (K, q) on demand.
  /// `harmonic` entries are multiples of the step's q.
  nlohmann::json potential_spec = nlohmann::json::object();
  nlohmann::json initial_spec = nlohmann::json::object();

  TimeStep step() const;
  Grid grid() const { return Grid(modes); }
  FunctionSpec potential_function() const;
  FunctionSpec initial_function() const;
  ModelSpec model() const;
  PhysicalState initial_state() const;

  /// Named tolerance with built-in defaults; throws ConfigError for
  /// unknown names.
  double tolerance(const std::string& name) const;
  /// Overrides one tolerance; unknown names are rejected.
  void set_tolerance(const std::string& name, double value);

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Defaults for every recognized tolerance name.
const std::map<std::string, double>& default_tolerances();

ExperimentConfig load_config(const std::filesystem::path& path);

/// Parses a function description.  `q` resolves `harmonic` entries.
FunctionSpec parse_function_spec(const nlohmann::json& j, const std::string& field,
                                 std::optional<long long> q);

/// "3", "-1/2", "0.25" or a JSON number.
double parse_real(const nlohmann::json& j, const std::string& field);

}  // namespace splitstep
