#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "splitstep/state.hpp"

namespace splitstep {

enum class CheckStatus { kPass, kFail, kNotClaimed };

std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::kFail;
  double measured = 0.0;
  double threshold = 0.0;
  /// "<=" or ">=": how measured is compared against threshold.
  std::string relation = "<=";
  /// The property being certified, in one line.
  std::string anchor;
  std::string detail;
};

/// measured <= threshold passes.
Check check_at_most(std::string name, double measured, double threshold, std::string anchor,
                    std::string detail = {});
/// measured >= threshold passes.
Check check_at_least(std::string name, double measured, double threshold, std::string anchor,
                     std::string detail = {});
Check not_claimed(std::string name, double measured, double threshold, std::string anchor,
                  std::string detail);

struct VerificationReport {
  std::vector<Check> checks;

  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const std::vector<Check>& more) { checks.insert(checks.end(), more.begin(), more.end()); }
  /// True iff no check failed.
  bool passed() const;
  std::size_t count(CheckStatus s) const;
  const Check* find(const std::string& name) const;
  /// One line per check.
  std::string render() const;
  nlohmann::json to_json() const;
};

using ForwardTransform = std::function<SpectralState(const PhysicalState&)>;

struct SuiteOptions {
  std::uint64_t seed = 20240501;
  /// Overrides of the named tolerances in default_tolerances().
  std::map<std::string, double> tolerances;
  int samples = 1000;
  /// Substitute forward transform used by the transform checks (test hook).
  ForwardTransform forward_transform;

  double tolerance(const std::string& name) const;
  SpectralState forward(const PhysicalState& u) const;
};

/// Complex Gaussian samples at every grid point.
PhysicalState random_state(const Grid& grid, std::mt19937_64& rng);
/// Complex Gaussian Fourier coefficients on modes min_mode <= |m| <= max_mode.
PhysicalState random_low_mode_state(const Grid& grid, std::mt19937_64& rng, int max_mode,
                                    int min_mode = 0);
/// Real Gaussian samples at every grid point.
std::vector<double> random_real_samples(const Grid& grid, std::mt19937_64& rng);

/// The ten acceptance criteria, one check each, in order.
Check acceptance_conservation(const SuiteOptions& options);
Check acceptance_commutator(const SuiteOptions& options);
Check acceptance_free_flow_identity(const SuiteOptions& options);
Check acceptance_closed_form(const SuiteOptions& options);
Check acceptance_drift_lemma(const SuiteOptions& options);
Check acceptance_energy_growth(const SuiteOptions& options);
Check acceptance_cfl_sharpness(const SuiteOptions& options);
Check acceptance_norm_equivalence(const SuiteOptions& options);
Check acceptance_semidiscrete(const SuiteOptions& options);
Check acceptance_gagliardo_nirenberg(const SuiteOptions& options);

std::vector<Check> acceptance_suite(const SuiteOptions& options);

/// Module-level invariants (transform identities, norm inequalities, flow
/// group properties, projection properties, splitting order).
std::vector<Check> invariant_checks(const SuiteOptions& options);

}  // namespace splitstep
