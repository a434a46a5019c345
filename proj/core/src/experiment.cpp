#include "splitstep/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "splitstep/dft.hpp"
#include "splitstep/flows.hpp"
#include "splitstep/norms.hpp"

namespace splitstep {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kResonant:
      return "resonant";
    case Classification::kResonantStepOnly:
      return "resonant_step_only";
    case Classification::kNonResonant:
      return "non_resonant";
  }
  return "unknown";
}

ClassificationResult classify(const ModelSpec& model, const PhysicalState& u0,
                              const TimeStep& step, double tolerance) {
  const auto rational = step.rational();
  if (!rational) return {Classification::kNonResonant, "floating-point step"};
  const Grid& grid = u0.grid();
  const long long q = rational->q();
  if (grid.modes() % q != 0 || (grid.modes() / q) % 2 != 0) {
    return {Classification::kNonResonant,
            "q = " + std::to_string(q) + " does not divide K = " + std::to_string(grid.modes()) +
                " with an even quotient"};
  }
  if (const auto* linear = std::get_if<LinearModel>(&model)) {
    const double defect = commutator_defect(step, *linear);
    if (defect <= tolerance) return {Classification::kResonant, "commutator vanishes"};
    return {Classification::kResonantStepOnly,
            "commutator defect " + std::to_string(defect) + " above tolerance"};
  }
  const double defect = membership_defect(u0, q);
  const double identity = free_flow_identity_defect(*rational, grid);
  if (defect <= tolerance * std::max(1.0, l2_norm(u0)) && identity <= 10 * tolerance) {
    return {Classification::kResonant, "initial data in W and free flow trivial on W"};
  }
  return {Classification::kResonantStepOnly,
          "initial data outside W (defect " + std::to_string(defect) + ")"};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  if (x.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: degenerate window (constant abscissa)");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

LineFit fit_drift_slope(std::span<const TrajectoryRecord> records, Window window) {
  std::vector<double> t;
  std::vector<double> h;
  for (const auto& r : records) {
    if (r.n < window.first || r.n > window.last) continue;
    t.push_back(r.t);
    h.push_back(r.h1);
  }
  if (t.size() < 2) {
    throw std::invalid_argument("fit_drift_slope: degenerate window, fewer than two records");
  }
  return fit_line(t, h);
}

PhysicalState closed_form(const ModelSpec& model, const PhysicalState& u0, const TimeStep& step,
                          std::int64_t n) {
  const double t = static_cast<double>(n) * step.tau();
  if (std::holds_alternative<CubicModel>(model)) return potential_flow(u0, t, model);
  const PhysicalState phased = potential_flow(u0, t, model);
  return inverse_dft(free_flow(forward_dft(phased), step, n));
}

namespace {

bool is_resonant(const ClassificationResult& c) { return c.kind == Classification::kResonant; }

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const ModelSpec model = config.model();
  const PhysicalState u0 = config.initial_state();
  const TimeStep step = config.step();
  const Grid grid = u0.grid();

  ExperimentResult result{Trajectory{u0, step.tau(), {}}, ExperimentSummary{}};
  ExperimentSummary& summary = result.summary;
  summary.config = config.to_json();
  summary.bounds = bound_constants(model, u0, step);
  summary.assembled = assembled_constants(summary.bounds);
  summary.classification = classify(model, u0, step, config.tolerance("commutator"));
  summary.cfl = step.tau() * static_cast<double>(grid.modes()) * grid.modes();

  const BoundConstants& bc = summary.bounds;
  const bool resonant = is_resonant(summary.classification);
  const bool linear = std::holds_alternative<LinearModel>(model);
  std::optional<long long> member_q;
  if (summary.classification.kind != Classification::kNonResonant) {
    member_q = step.rational()->q();
  }

  std::int64_t n_steps = 0;
  if (config.n_steps) {
    n_steps = *config.n_steps;
  } else if (bc.horizon_steps) {
    n_steps = *bc.horizon_steps;
  } else {
    throw ConfigError("/n_steps", "\"horizon\" requested but the horizon is unbounded");
  }
  summary.n_steps = n_steps;

  const double l2_0 = l2_norm(u0);
  double l2_min = l2_0;
  double l2_max = l2_0;
  double h1_max = 0.0;
  double closed_err = 0.0;
  auto& records = result.trajectory.records;
  records.reserve(static_cast<std::size_t>(n_steps) + 1);

  auto observe = [&](std::int64_t n, const PhysicalState& u) {
    const SpectralState v = forward_dft(u);
    TrajectoryRecord r;
    r.n = n;
    r.t = static_cast<double>(n) * step.tau();
    r.l2 = l2_norm(u);
    r.h1 = h1_seminorm(u);
    r.kinetic_tk = kinetic_tk(v);
    r.energy_hk = energy_hk(u, model);
    if (resonant && bc.within_horizon(n)) {
      r.h1_lower_bound = linear ? scheme_h1_lower_bound(n, bc) : h1_lower_bound(n, bc);
      const double h1_margin = r.h1 - *r.h1_lower_bound;
      summary.h1_bound_margin =
          summary.h1_bound_margin ? std::min(*summary.h1_bound_margin, h1_margin) : h1_margin;
      const double e_margin = r.energy_hk - *energy_lower_bound(n, bc);
      summary.energy_bound_margin =
          summary.energy_bound_margin ? std::min(*summary.energy_bound_margin, e_margin) : e_margin;
    }
    if (member_q) r.membership_defect = membership_defect(u, *member_q);
    if (resonant) {
      const PhysicalState exact = closed_form(model, u0, step, n);
      for (int j = grid.first_index(); j <= grid.last_index(); ++j) {
        closed_err = std::max(closed_err, std::abs(u[j] - exact[j]));
      }
    }
    l2_min = std::min(l2_min, r.l2);
    l2_max = std::max(l2_max, r.l2);
    h1_max = std::max(h1_max, r.h1);
    records.push_back(r);
  };

  evolve(u0, step, n_steps, model, observe, config.splitting);

  summary.l2_relative_variation = l2_0 > 0.0 ? (l2_max - l2_min) / l2_0 : 0.0;
  summary.h1_growth = bc.h1_0 > 0.0 ? h1_max / bc.h1_0 : 0.0;
  if (resonant) summary.closed_form_error = closed_err;

  Window window{0, bc.horizon_steps ? std::min(*bc.horizon_steps, n_steps) : n_steps};
  if (window.last >= 1) summary.drift_fit = fit_drift_slope(records, window);
  return result;
}

nlohmann::json to_json(const BoundConstants& b) {
  nlohmann::json j;
  j["c0"] = b.c0;
  j["C0"] = b.C0;
  j["C1"] = b.C1;
  j["C2"] = b.C2;
  j["h1_0"] = b.h1_0;
  j["l2_0"] = b.l2_0;
  j["tau"] = b.tau;
  j["dx"] = b.dx;
  j["model"] = b.linear ? "linear" : "cubic";
  if (!b.linear) j["sigma"] = b.sigma;
  j["horizon_steps"] = b.horizon_steps ? nlohmann::json(*b.horizon_steps) : nlohmann::json(nullptr);
  j["no_drift"] = b.no_drift;
  return j;
}

nlohmann::json to_json(const AssembledConstants& a) {
  return {{"equivalence_lower", a.equivalence_lower},
          {"equivalence_upper", a.equivalence_upper},
          {"slope_coefficient", a.slope_coefficient},
          {"offset_weight", a.offset_weight},
          {"kinetic_prefactor", a.kinetic_prefactor},
          {"energy_root_slope", a.energy_root_slope},
          {"h1_slope", a.h1_slope}};
}

nlohmann::json design_tags() {
  return {{"flows.sign_convention", "exp(-i t ...) for both flows, potential first/v1"},
          {"norms.kinetic_scaling", "kinetic_tk = sum j^2 |V_j|^2, energy kinetic part pi*kinetic_tk/v1"},
          {"norms.quartic_factor", "sigma/4 dx sum |U|^4/v1"},
          {"norms.equivalence", "c = 1/(2 pi), C = pi/8/v1"},
          {"resonance.commutator_norm", "entrywise max/v1"},
          {"resonance.step_canonical_form", "gcd-reduced, power 2 only when gcd(p,q)=1/v1"},
          {"resonance.energy_bound", "rigorous discrete sup bound l2^2/(2pi) + h1 l2/v1"},
          {"harness.csv_schema", "n,t,l2,h1,kinetic_TK,energy_HK,h1_lower_bound,membership_defect/v1"}};
}

nlohmann::json to_json(const ExperimentSummary& s) {
  nlohmann::json j;
  j["config"] = s.config;
  j["bound_constants"] = to_json(s.bounds);
  j["assembled_constants"] = to_json(s.assembled);
  j["classification"] = to_string(s.classification.kind);
  j["classification_reason"] = s.classification.reason;
  j["cfl_tau_K2"] = s.cfl;
  j["cfl_tau_K2_over_pi"] = s.cfl / kPi;
  j["n_steps"] = s.n_steps;
  if (s.drift_fit) {
    j["drift_fit"] = {{"slope", s.drift_fit->slope},
                      {"intercept", s.drift_fit->intercept},
                      {"residual", s.drift_fit->residual}};
  } else {
    j["drift_fit"] = nullptr;
  }
  j["l2_relative_variation"] = s.l2_relative_variation;
  j["h1_growth"] = s.h1_growth;
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  j["h1_bound_margin"] = opt(s.h1_bound_margin);
  j["energy_bound_margin"] = opt(s.energy_bound_margin);
  j["closed_form_error"] = opt(s.closed_form_error);
  j["design_tags"] = design_tags();
  return j;
}

}  // namespace splitstep
