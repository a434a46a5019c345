#pragma once

#include "splitstep/checks.hpp"
#include "splitstep/config.hpp"
#include "splitstep/experiment.hpp"

namespace splitstep {

struct VerifyOptions {
  SuiteOptions suite;
  bool include_invariants = true;
  bool include_acceptance = true;
};

/// Checks on one experiment run: conservation always, resonance-dependent
/// bounds only when the run is classified resonant (otherwise not claimed).
std::vector<Check> run_checks(const ExperimentConfig& config, const ExperimentResult& result);

/// run_checks on the configured experiment, then the module invariants and
/// the acceptance criteria.  Never throws for failed checks.
VerificationReport verify_suite(const ExperimentConfig& config, const VerifyOptions& options = {});

/// Suite options seeded and toleranced from a config.
SuiteOptions suite_options(const ExperimentConfig& config);

}  // namespace splitstep
