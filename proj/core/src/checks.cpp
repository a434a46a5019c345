#include "splitstep/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "splitstep/config.hpp"
#include "splitstep/dft.hpp"
#include "splitstep/experiment.hpp"
#include "splitstep/flows.hpp"
#include "splitstep/function_spec.hpp"
#include "splitstep/norms.hpp"
#include "splitstep/resonance.hpp"
#include "splitstep/semidiscrete.hpp"

namespace splitstep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double max_diff(const PhysicalState& a, const PhysicalState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

double max_diff(const SpectralState& a, const SpectralState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

PhysicalState from_values(const Grid& grid, std::vector<Complex> v) {
  return PhysicalState(grid, std::move(v));
}

PhysicalState real_part(const PhysicalState& u) {
  std::vector<Complex> v(u.values().begin(), u.values().end());
  for (auto& z : v) z = Complex(z.real(), 0.0);
  return from_values(u.grid(), std::move(v));
}

PhysicalState scaled(const PhysicalState& u, Complex s) {
  std::vector<Complex> v(u.values().begin(), u.values().end());
  for (auto& z : v) z *= s;
  return from_values(u.grid(), std::move(v));
}

PhysicalState plus(const PhysicalState& a, const PhysicalState& b) {
  std::vector<Complex> v(a.values().begin(), a.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.values()[i];
  return from_values(a.grid(), std::move(v));
}

PhysicalState unit_sup(const PhysicalState& u) { return scaled(u, 1.0 / linf_norm(u)); }

Complex inner(const PhysicalState& a, const PhysicalState& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) s += std::conj(a.values()[i]) * b.values()[i];
  return s;
}

LinearModel potential_in_w(const Grid& grid, long long q, std::mt19937_64& rng) {
  std::vector<Complex> raw;
  for (double x : random_real_samples(grid, rng)) raw.emplace_back(x, 0.0);
  PhysicalState v = project_w(from_values(grid, std::move(raw)), q);
  v = plus(v, sample_function(FunctionSpec::cosine(static_cast<int>(q)), grid));
  return LinearModel::from_samples(real_part(v));
}

double relative_l2_variation(const PhysicalState& u0, const TimeStep& step, std::int64_t n,
                             const ModelSpec& model, Splitting splitting = Splitting::kLie) {
  const double l0 = l2_norm(u0);
  double lo = l0;
  double hi = l0;
  evolve(u0, step, n, model,
         [&](std::int64_t, const PhysicalState& u) {
           const double l = l2_norm(u);
           lo = std::min(lo, l);
           hi = std::max(hi, l);
         },
         splitting);
  return (hi - lo) / l0;
}

struct ResonantCase {
  long long q;
  long long p;
  int modes;
};

constexpr ResonantCase kResonantCases[] = {{2, 1, 8}, {3, 2, 12}, {4, 3, 16}};

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kNotClaimed:
      return "not_claimed";
  }
  return "unknown";
}

Check check_at_most(std::string name, double measured, double threshold, std::string anchor,
                    std::string detail) {
  const bool ok = measured <= threshold;
  return {std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFail, measured, threshold, "<=",
          std::move(anchor), std::move(detail)};
}

Check check_at_least(std::string name, double measured, double threshold, std::string anchor,
                     std::string detail) {
  const bool ok = measured >= threshold;
  return {std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFail, measured, threshold, ">=",
          std::move(anchor), std::move(detail)};
}

Check not_claimed(std::string name, double measured, double threshold, std::string anchor,
                  std::string detail) {
  return {std::move(name), CheckStatus::kNotClaimed, measured, threshold, "n/a", std::move(anchor),
          std::move(detail)};
}

bool VerificationReport::passed() const { return count(CheckStatus::kFail) == 0; }

std::size_t VerificationReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerificationReport::render() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    std::string tag = to_string(c.status);
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << "[" << tag << "] " << c.name << ": measured " << fmt(c.measured) << " " << c.relation
       << " " << fmt(c.threshold);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  os << count(CheckStatus::kPass) << " passed, " << count(CheckStatus::kFail) << " failed, "
     << count(CheckStatus::kNotClaimed) << " not claimed\n";
  return os.str();
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"status", to_string(c.status)},
                   {"measured", c.measured},
                   {"threshold", c.threshold},
                   {"relation", c.relation},
                   {"anchor", c.anchor},
                   {"detail", c.detail}});
  }
  return {{"passed", passed()}, {"checks", arr}};
}

double SuiteOptions::tolerance(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  const auto& d = default_tolerances();
  if (auto it = d.find(name); it != d.end()) return it->second;
  throw std::invalid_argument("unknown tolerance name: " + name);
}

SpectralState SuiteOptions::forward(const PhysicalState& u) const {
  return forward_transform ? forward_transform(u) : forward_dft(u);
}

PhysicalState random_state(const Grid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(static_cast<std::size_t>(grid.modes()));
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return from_values(grid, std::move(v));
}

PhysicalState random_low_mode_state(const Grid& grid, std::mt19937_64& rng, int max_mode,
                                    int min_mode) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(static_cast<std::size_t>(grid.modes()));
  for (int j = grid.first_index(); j <= grid.last_index(); ++j) {
    const int a = std::abs(j);
    if (a < min_mode || a > max_mode) continue;
    v[grid.slot(j)] = Complex(g(rng), g(rng));
  }
  return inverse_dft(SpectralState(grid, std::move(v)));
}

std::vector<double> random_real_samples(const Grid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(static_cast<std::size_t>(grid.modes()));
  for (auto& x : v) x = g(rng);
  return v;
}

Check acceptance_conservation(const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed);
  const ResonantStep resonant(1, 2);
  const TimeStep steps[] = {TimeStep(resonant), TimeStep::real(0.1)};
  double worst = 0.0;
  int runs = 0;
  for (int k : {4, 8, 64, 256}) {
    const Grid grid(k);
    const auto v = sample_function(FunctionSpec::cosine(1, 1.0, 0.5) + FunctionSpec::sine(1, -0.3), grid);
    const ModelSpec models[] = {CubicModel(1), CubicModel(-1), LinearModel::from_samples(v)};
    for (const auto& model : models) {
      for (const auto& step : steps) {
        const PhysicalState u0 = random_state(grid, rng);
        worst = std::max(worst, relative_l2_variation(u0, step, 1000, model));
        ++runs;
      }
    }
  }
  return check_at_most("conservation", worst, options.tolerance("l2_drift"),
                       "the split step preserves the discrete l2 norm",
                       std::to_string(runs) + " trajectories of 1000 steps");
}

Check acceptance_commutator(const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed + 1);
  double worst = 0.0;
  for (const auto& c : kResonantCases) {
    const Grid grid(c.modes);
    const LinearModel v = potential_in_w(grid, c.q, rng);
    worst = std::max(worst, commutator_defect(ResonantStep(c.p, c.q), v));
  }
  const Grid grid8(8);
  const LinearModel cosine = LinearModel::from_samples(sample_function(FunctionSpec::cosine(1), grid8));
  const double positive = commutator_defect(ResonantStep(1, 2), cosine);
  const double floor = options.tolerance("commutator_positive");
  Check c = check_at_most("commutator_vanishing", worst, options.tolerance("commutator"),
                          "the free step commutes with V in W for tau = 2 pi p/q",
                          "cos(x) with q=2, K=8 gives " + fmt(positive) + ", required >= " + fmt(floor));
  if (!(positive >= floor)) c.status = CheckStatus::kFail;
  return c;
}

Check acceptance_free_flow_identity(const SuiteOptions& options) {
  double worst = 0.0;
  for (const auto& c : kResonantCases) {
    for (int power : {1, 2}) {
      worst = std::max(worst, free_flow_identity_defect(ResonantStep(c.p, c.q, power), Grid(c.modes)));
    }
  }
  return check_at_most("free_flow_identity", worst, options.tolerance("free_flow_identity"),
                       "the resonant free step is the identity on W", "powers 1 and 2, three (q,p,K) cases");
}

Check acceptance_closed_form(const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed + 2);
  struct Case {
    ModelSpec model;
    PhysicalState u0;
    TimeStep step;
  };
  std::vector<Case> cases;
  {
    const Grid g(4);
    cases.push_back({CubicModel(1), from_values(g, {1.5, 0.5, 1.5, 0.5}), ResonantStep(1, 2)});
  }
  {
    const Grid g(64);
    cases.push_back({CubicModel(-1), unit_sup(project_w(random_low_mode_state(g, rng, 12), 4)),
                     ResonantStep(1, 4, 2)});
    cases.push_back({CubicModel(1), scaled(unit_sup(project_w(random_low_mode_state(g, rng, 8), 2)), 0.5),
                     ResonantStep(1, 2)});
  }
  {
    const Grid g(8);
    cases.push_back({LinearModel::from_samples(sample_function(FunctionSpec::cosine(2), g)),
                     random_state(g, rng), ResonantStep(1, 2)});
  }
  {
    const Grid g(48);
    cases.push_back({potential_in_w(g, 3, rng), random_low_mode_state(g, rng, 10), ResonantStep(2, 3)});
  }
  double worst = 0.0;
  for (const auto& c : cases) {
    evolve(c.u0, c.step, 1000, c.model, [&](std::int64_t n, const PhysicalState& u) {
      worst = std::max(worst, max_diff(u, closed_form(c.model, c.u0, c.step, n)));
    });
  }
  return check_at_most("closed_form", worst, options.tolerance("closed_form"),
                       "resonant Lie iterates equal the closed-form phase solution",
                       std::to_string(cases.size()) + " fixtures, every n <= 1000");
}

Check acceptance_drift_lemma(const SuiteOptions& options) {
  const Grid g(4);
  const PhysicalState u0 = from_values(g, {1.5, 0.5, 1.5, 0.5});
  const ModelSpec model = CubicModel(1);
  const TimeStep step = ResonantStep(1, 2);
  const BoundConstants bc = bound_constants(model, u0, step);
  const std::int64_t horizon = bc.horizon_steps.value_or(1000);
  double margin = kInf;
  evolve(u0, step, horizon, model, [&](std::int64_t n, const PhysicalState& u) {
    margin = std::min(margin, h1_seminorm(u) - *h1_lower_bound(n, bc));
  });
  const double slack = options.tolerance("bound_slack");
  return check_at_least("drift_lemma", margin, -slack,
                        "h1 of the phase flow exceeds (2/pi) n tau c0 - h1_0 within the horizon",
                        "K=4 fixture, c0=" + fmt(bc.c0) + ", C1=" + fmt(bc.C1) + ", horizon=" +
                            std::to_string(horizon) + " steps");
}

namespace {

struct GrowthOutcome {
  double bound_margin = kInf;
  double residual_fraction = kInf;
  double slope = 0.0;
  std::int64_t horizon = 0;
};

GrowthOutcome energy_growth_run(const ModelSpec& model, const PhysicalState& u0, const TimeStep& step) {
  GrowthOutcome out;
  const BoundConstants bc = bound_constants(model, u0, step);
  out.horizon = bc.horizon_steps.value_or(0);
  std::vector<double> t;
  std::vector<double> root;
  evolve(u0, step, out.horizon, model, [&](std::int64_t n, const PhysicalState& u) {
    const double h = energy_hk(u, model);
    out.bound_margin = std::min(out.bound_margin, h - *energy_lower_bound(n, bc));
    if (2 * n >= out.horizon) {
      t.push_back(static_cast<double>(n) * step.tau());
      root.push_back(std::sqrt(std::max(h, 0.0)));
    }
  });
  if (t.size() >= 3) {
    const LineFit fit = fit_line(t, root);
    const auto [lo, hi] = std::minmax_element(root.begin(), root.end());
    out.slope = fit.slope;
    out.residual_fraction = *hi > *lo ? fit.residual / (*hi - *lo) : kInf;
  }
  return out;
}

}  // namespace

Check acceptance_energy_growth(const SuiteOptions& options) {
  const Grid g(256);
  const ModelSpec linear = LinearModel::from_samples(sample_function(FunctionSpec::cosine(2), g));
  const PhysicalState lin_u0 = sample_function(FunctionSpec({{2, 1.0}}), g);
  const ModelSpec cubic = CubicModel(1);
  const PhysicalState cub_u0 = sample_function(FunctionSpec({{0, 1.0}, {-2, 0.5}}), g);
  const GrowthOutcome a = energy_growth_run(linear, lin_u0, ResonantStep(1, 2));
  const GrowthOutcome b = energy_growth_run(cubic, cub_u0, ResonantStep(1, 2));
  const double limit = options.tolerance("fit_residual_fraction");
  const double slack = options.tolerance("bound_slack");
  const double worst = std::max(a.residual_fraction, b.residual_fraction);
  Check c = check_at_most("energy_growth", worst, limit,
                          "energy stays above the quadratic bound and sqrt(energy) grows linearly",
                          "linear: horizon " + std::to_string(a.horizon) + ", margin " + fmt(a.bound_margin) +
                              ", slope " + fmt(a.slope) + "; cubic: horizon " + std::to_string(b.horizon) +
                              ", margin " + fmt(b.bound_margin) + ", slope " + fmt(b.slope));
  if (!(a.bound_margin >= -slack && b.bound_margin >= -slack && a.slope > 0.0 && b.slope > 0.0)) {
    c.status = CheckStatus::kFail;
  }
  return c;
}

Check acceptance_cfl_sharpness(const SuiteOptions& options) {
  const double factor = options.tolerance("cfl_drift_factor");
  double worst_ratio = kInf;
  double worst_cfl_error = 0.0;
  std::string detail;
  for (long long q : {4LL, 8LL, 16LL}) {
    const Grid g(static_cast<int>(2 * q));
    const PhysicalState u0 = sample_function(FunctionSpec({{0, 1.0}, {static_cast<int>(-q), 0.1}}), g);
    const ModelSpec model = CubicModel(1);
    const TimeStep step = ResonantStep(1, q, 2);
    const double cfl = step.tau() * g.modes() * g.modes();
    worst_cfl_error = std::max(worst_cfl_error, std::abs(cfl - 8.0 * kPi) / (8.0 * kPi));
    const BoundConstants bc = bound_constants(model, u0, step);
    const std::int64_t horizon = bc.horizon_steps.value_or(0);
    const double h0 = h1_seminorm(u0);
    const double hn = h1_seminorm(evolve(u0, step, horizon, model));
    const TimeStep control = ResonantStep(1, 2 * q * q);
    double control_max = 0.0;
    evolve(u0, control, horizon, model, [&](std::int64_t, const PhysicalState& u) {
      control_max = std::max(control_max, h1_seminorm(u));
    });
    // 55/89 truncates the continued fraction of the inverse golden ratio.
    const TimeStep golden = TimeStep::real(kTwoPi * 55.0 / 89.0 / static_cast<double>(q * q));
    double golden_max = 0.0;
    evolve(u0, golden, horizon, model, [&](std::int64_t, const PhysicalState& u) {
      golden_max = std::max(golden_max, h1_seminorm(u));
    });
    worst_ratio = std::min(worst_ratio, hn / h0);
    detail += "q=" + std::to_string(q) + ": horizon " + std::to_string(horizon) + ", growth " +
              fmt(hn / h0) + ", control tau K^2 = 4 pi growth " + fmt(control_max / h0) +
              ", golden control growth " + fmt(golden_max / h0) + "; ";
  }
  detail += "max relative |tau K^2 - 8 pi| " + fmt(worst_cfl_error);
  Check c = check_at_least("cfl_sharpness", worst_ratio, factor,
                           "tau = 2 pi/q^2 with K = 2q has CFL number 8 pi and drifts", detail);
  if (!(worst_cfl_error <= 4.0 * std::numeric_limits<double>::epsilon())) c.status = CheckStatus::kFail;
  return c;
}

Check acceptance_norm_equivalence(const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed + 3);
  const EquivalenceConstants eq;
  const double tol = options.tolerance("equivalence");
  double violation = -kInf;
  double lo_ratio = kInf;
  double hi_ratio = 0.0;
  for (int k : {4, 8, 64, 256}) {
    const Grid g(k);
    for (int s = 0; s < options.samples; ++s) {
      const PhysicalState u = (s % 2 == 0) ? random_state(g, rng)
                                            : random_low_mode_state(g, rng, 1 + s % (k / 2));
      const double h = h1_seminorm_sq(u);
      if (h == 0.0) continue;
      const double t = kinetic_tk(forward_dft(u));
      violation = std::max({violation, (eq.lower * h - t) / h, (t - eq.upper * h) / h});
      lo_ratio = std::min(lo_ratio, t / h);
      hi_ratio = std::max(hi_ratio, t / h);
    }
  }
  // Extreme modes: -K/2 attains C exactly, mode 1 approaches c as K grows.
  double upper_gap = 0.0;
  for (int k : {4, 8, 64, 256}) {
    const Grid g(k);
    const PhysicalState top = sample_function(FunctionSpec({{-k / 2, 1.0}}), g);
    upper_gap = std::max(upper_gap, std::abs(kinetic_tk(forward_dft(top)) / h1_seminorm_sq(top) / eq.upper - 1.0));
  }
  const Grid g256(256);
  const PhysicalState low = sample_function(FunctionSpec({{1, 1.0}}), g256);
  const double lower_gap = kinetic_tk(forward_dft(low)) / h1_seminorm_sq(low) / eq.lower - 1.0;
  Check c = check_at_most("norm_equivalence", violation, tol,
                          "h1^2/(2 pi) <= kinetic_tk <= (pi/8) h1^2 for every K",
                          "ratio range [" + fmt(lo_ratio) + ", " + fmt(hi_ratio) + "], mode -K/2 gap " +
                              fmt(upper_gap) + ", mode 1 at K=256 gap " + fmt(lower_gap));
  if (!(upper_gap <= tol && lower_gap >= 0.0 && lower_gap <= 1e-3)) c.status = CheckStatus::kFail;
  return c;
}

Check acceptance_semidiscrete(const SuiteOptions& options) {
  namespace sd = semidiscrete;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double worst = kInf;
  std::string detail;

  auto run = [&](const std::string& label, const sd::FourierFunction& u0, const sd::SemiDiscreteModel& model,
                 const sd::FourierFunction& w, const ResonantStep& step,
                 const std::function<sd::Truncated(long long)>& iterate) {
    const double tau = step.tau();
    const double c0 = sd::product_l2(w.derivative(), u0);
    const double h1_0 = sd::hs_norm(u0, 1.0);
    const sd::EnergyFloor floor = sd::energy_floor(model, sd::l2_norm(u0));
    const double c_prime = h1_0 + floor.shift + std::sqrt(2.0 * floor.deficit);
    double local = kInf;
    int energy_claims = 0;
    for (long long n = 0; n <= 64; ++n) {
      const sd::Truncated un = iterate(n);
      const double r = un.residual;
      const double drift = c0 * static_cast<double>(n) * tau;
      local = std::min(local, sd::hs_norm(un.value, 1.0) - (drift - h1_0) + r);
      if (drift >= c_prime) {
        const double h = sd::continuous_energy(un.value, model);
        const double energy_residual = r * (1.0 + 2.0 * sd::hs_norm(un.value, 1.0)) + r * r;
        local = std::min(local, h - 0.5 * (drift - c_prime) * (drift - c_prime) + energy_residual);
        ++energy_claims;
      }
    }
    worst = std::min(worst, local);
    detail += label + ": c0 " + fmt(c0) + ", c' " + fmt(c_prime) + ", energy claimed at " +
              std::to_string(energy_claims) + " of 65 steps; ";
  };

  {
    const sd::FourierFunction u0(1, {inv_sqrt2, 0.0, inv_sqrt2});
    const sd::FourierFunction v(2, {0.5, 0.0, 0.0, 0.0, 0.5});
    const sd::RealPotential pot(v);
    run("linear", u0, pot, v, ResonantStep(1, 2),
        [&](long long n) { return sd::closed_form_linear(u0, pot, 1, 2, n); });
  }
  {
    const sd::FourierFunction u0(2, {0.5, 0.0, 1.0, 0.0, 0.0});
    const sd::FourierFunction w = u0 * u0.conjugate();
    const ResonantStep step(1, 2);
    run("cubic", u0, CubicModel(1), w, step,
        [&](long long n) { return sd::closed_form_cubic(u0, 1, step, n); });
  }
  (void)options;
  return check_at_least("semidiscrete_growth", worst, 0.0,
                        "semi-discrete H1 drift and quadratic energy growth for resonant steps",
                        detail + "measured is the smallest margin plus quadrature residual");
}

namespace {

struct GnExtremes {
  double discrete = 0.0;
  double continuous = 0.0;
  double continuous_linf = 0.0;
  double rigorous_violation = -kInf;
};

GnExtremes gn_extremes(std::uint64_t seed, int samples) {
  namespace sd = semidiscrete;
  std::mt19937_64 rng(seed);
  GnExtremes out;
  for (int k = 8; k <= 512; k *= 2) {
    const Grid g(k);
    for (int s = 0; s < samples; ++s) {
      const PhysicalState u = random_low_mode_state(g, rng, 2, 1);
      if (const auto r = gn_ratio(u)) out.discrete = std::max(out.discrete, *r);
      const double l2 = l2_norm(u);
      const double h1 = h1_seminorm(u);
      out.rigorous_violation = std::max(out.rigorous_violation,
                                        (quartic_term(u) - quartic_bound(l2, h1)) / quartic_bound(l2, h1));
    }
  }
  std::normal_distribution<double> gauss;
  for (int s = 0; s < samples; ++s) {
    std::vector<Complex> c(5);
    for (int m = -2; m <= 2; ++m) {
      if (m != 0) c[static_cast<std::size_t>(m + 2)] = Complex(gauss(rng), gauss(rng));
    }
    const sd::FourierFunction u(2, std::move(c));
    if (const auto r = sd::gn_ratio(u)) out.continuous = std::max(out.continuous, *r);
    if (const auto r = sd::linf_ratio(u)) out.continuous_linf = std::max(out.continuous_linf, *r);
  }
  return out;
}

double relative_spread(double a, double b) { return std::abs(a - b) / std::max(a, b); }

}  // namespace

Check acceptance_gagliardo_nirenberg(const SuiteOptions& options) {
  const GnExtremes a = gn_extremes(options.seed + 4, options.samples);
  const GnExtremes b = gn_extremes(options.seed + 1004, options.samples);
  const double spread = std::max({relative_spread(a.discrete, b.discrete),
                                  relative_spread(a.continuous, b.continuous),
                                  relative_spread(a.continuous_linf, b.continuous_linf)});
  const double recorded = std::max(a.discrete, b.discrete);
  Check c = check_at_most("gagliardo_nirenberg", spread, options.tolerance("gn_stability"),
                          "quartic / (h1 l2^3) bounded by one constant across K",
                          "recorded discrete constant " + fmt(recorded) + " (seeds " + fmt(a.discrete) +
                              ", " + fmt(b.discrete) + "), continuous " + fmt(a.continuous) + ", " +
                              fmt(b.continuous) + ", sup ratio " + fmt(a.continuous_linf) + ", " +
                              fmt(b.continuous_linf));
  if (std::max(a.rigorous_violation, b.rigorous_violation) > 1e-12) c.status = CheckStatus::kFail;
  return c;
}

std::vector<Check> acceptance_suite(const SuiteOptions& options) {
  return {acceptance_conservation(options),     acceptance_commutator(options),
          acceptance_free_flow_identity(options), acceptance_closed_form(options),
          acceptance_drift_lemma(options),      acceptance_energy_growth(options),
          acceptance_cfl_sharpness(options),    acceptance_norm_equivalence(options),
          acceptance_semidiscrete(options),     acceptance_gagliardo_nirenberg(options)};
}

std::vector<Check> invariant_checks(const SuiteOptions& options) {
  std::mt19937_64 rng(options.seed + 5);
  std::vector<Check> out;
  const int samples = std::max(1, options.samples / 10);
  const int sizes[] = {4, 8, 64, 256};

  {
    double roundtrip = 0.0;
    double parseval = 0.0;
    for (int k : sizes) {
      const Grid g(k);
      for (int s = 0; s < samples; ++s) {
        const PhysicalState u = random_state(g, rng);
        const SpectralState v = options.forward(u);
        roundtrip = std::max(roundtrip, max_diff(inverse_dft(v), u) / linf_norm(u));
        double spectral = 0.0;
        for (const auto& z : v.values()) spectral += std::norm(z);
        parseval = std::max(parseval, std::abs(l2_norm_sq(u) - kTwoPi * spectral) / l2_norm_sq(u));
      }
    }
    out.push_back(check_at_most("dft_roundtrip", roundtrip, options.tolerance("roundtrip"),
                                "inverse transform undoes the forward transform"));
    out.push_back(check_at_most("parseval", parseval, options.tolerance("parseval"),
                                "l2^2 equals 2 pi times the sum of squared Fourier coefficients"));
  }
  {
    double worst = 0.0;
    for (int k : sizes) {
      const Grid g(k);
      for (int j = g.first_index(); j <= g.last_index(); ++j) {
        Complex sum = 0.0;
        for (int m = g.first_index(); m <= g.last_index(); ++m) sum += root_of_unity(static_cast<long long>(j) * m, k);
        worst = std::max(worst, std::abs(sum - (j == 0 ? Complex(k, 0.0) : Complex(0.0, 0.0))));
      }
    }
    out.push_back(check_at_most("exponential_sum", worst, 1e-12,
                                "sum over the grid of exp(2 i pi j k / K) is K at j = 0 and 0 otherwise"));
  }
  {
    double inverse = -kInf;
    double sup = -kInf;
    double quartic = -kInf;
    double form = 0.0;
    for (int k : sizes) {
      const Grid g(k);
      const auto v = sample_function(FunctionSpec::cosine(1, 0.7, 0.2), g);
      const ModelSpec models[] = {LinearModel::from_samples(v), CubicModel(1), CubicModel(-1)};
      for (int s = 0; s < samples; ++s) {
        const PhysicalState u = (s % 2) ? random_state(g, rng) : random_low_mode_state(g, rng, 3);
        const double l2 = l2_norm(u);
        const double h1 = h1_seminorm(u);
        inverse = std::max(inverse, (h1 - 2.0 / g.spacing() * l2) / h1);
        sup = std::max(sup, (linf_norm(u) * linf_norm(u) - linf_sq_bound(l2, h1)) / linf_sq_bound(l2, h1));
        quartic = std::max(quartic, (quartic_term(u) - quartic_bound(l2, h1)) / quartic_bound(l2, h1));
        for (const auto& m : models) {
          const Complex z = energy_quadratic_form(u, m);
          const double e = energy_hk(u, m);
          form = std::max(form, std::abs(z - Complex(e, 0.0)) / std::max(1.0, std::abs(e)));
        }
      }
    }
    out.push_back(check_at_most("inverse_inequality", inverse, 1e-12, "h1 <= (2/dx) l2"));
    out.push_back(check_at_most("discrete_sup_bound", sup, 1e-12, "max |U|^2 <= l2^2/(2 pi) + h1 l2"));
    out.push_back(check_at_most("discrete_gn_bound", quartic, 1e-12,
                                "dx sum |U|^4 <= l2^4/(2 pi) + h1 l2^3"));
    out.push_back(check_at_most("energy_quadratic_form", form, 1e-11,
                                "energy equals the real quadratic form with negligible imaginary part"));
  }
  {
    double modulus = 0.0;
    double kinetic = 0.0;
    double free_group = 0.0;
    double potential_group = 0.0;
    for (int k : {8, 64}) {
      const Grid g(k);
      const auto v = sample_function(FunctionSpec::sine(2, 1.3, 0.4), g);
      const ModelSpec models[] = {LinearModel::from_samples(v), CubicModel(1), CubicModel(-1)};
      for (int s = 0; s < samples; ++s) {
        const PhysicalState u = random_state(g, rng);
        const SpectralState uh = forward_dft(u);
        const double t1 = 0.37 + 0.01 * s;
        const double t2 = 1.91;
        for (const auto& m : models) {
          const PhysicalState w = potential_flow(u, t1, m);
          for (int j = g.first_index(); j <= g.last_index(); ++j) {
            modulus = std::max(modulus, std::abs(std::abs(w[j]) - std::abs(u[j])) / std::abs(u[j]));
          }
          potential_group = std::max(potential_group, max_diff(potential_flow(w, t2, m), potential_flow(u, t1 + t2, m)));
        }
        const SpectralState f = free_flow(uh, t1);
        kinetic = std::max(kinetic, std::abs(kinetic_tk(f) - kinetic_tk(uh)) / kinetic_tk(uh));
        free_group = std::max(free_group, max_diff(free_flow(f, t2), free_flow(uh, t1 + t2)));
      }
    }
    out.push_back(check_at_most("potential_flow_modulus", modulus, 4 * std::numeric_limits<double>::epsilon(),
                                "the potential flow only changes phases"));
    out.push_back(check_at_most("potential_flow_group", potential_group, 1e-12,
                                "potential flow over s then t equals flow over s + t"));
    out.push_back(check_at_most("free_flow_kinetic", kinetic, 1e-13, "the free flow preserves kinetic_tk"));
    out.push_back(check_at_most("free_flow_group", free_group, 1e-12, "free flow over s then t equals flow over s + t"));
  }
  {
    double idempotent = 0.0;
    double adjoint = 0.0;
    double invariance = 0.0;
    double lie_is_phase = 0.0;
    for (const auto& c : kResonantCases) {
      const Grid g(c.modes);
      for (int s = 0; s < samples; ++s) {
        const PhysicalState a = random_state(g, rng);
        const PhysicalState b = random_state(g, rng);
        const PhysicalState pa = project_w(a, c.q);
        idempotent = std::max(idempotent, max_diff(project_w(pa, c.q), pa));
        adjoint = std::max(adjoint, std::abs(inner(pa, b) - inner(a, project_w(b, c.q))) / (l2_norm_sq(a) + l2_norm_sq(b)));
        const ModelSpec cubic = CubicModel(s % 2 ? 1 : -1);
        invariance = std::max(invariance, membership_defect(potential_flow(pa, 0.83 + s, cubic), c.q));
        const TimeStep step = ResonantStep(c.p, c.q);
        lie_is_phase = std::max(lie_is_phase, max_diff(evolve(pa, step, 50, cubic),
                                                       potential_flow(pa, 50 * step.tau(), cubic)));
      }
    }
    out.push_back(check_at_most("projection_idempotent", idempotent, 1e-13, "projecting onto W twice changes nothing"));
    out.push_back(check_at_most("projection_self_adjoint", adjoint, 1e-13, "the projection onto W is orthogonal"));
    out.push_back(check_at_most("cubic_flow_keeps_w", invariance, 1e-12,
                                "the cubic phase flow maps W to itself"));
    out.push_back(check_at_most("resonant_lie_is_phase_flow", lie_is_phase, 1e-10,
                                "resonant Lie iterates equal the n tau phase flow"));
  }
  {
    // Local order of the Strang step against a refined Strang reference.
    const Grid g(16);
    const ModelSpec model = LinearModel::from_samples(sample_function(FunctionSpec::cosine(1, 0.8, 0.3), g));
    const PhysicalState u = random_low_mode_state(g, rng, 3);
    auto local_error = [&](double tau) {
      PhysicalState ref = u;
      const int sub = 2048;
      for (int i = 0; i < sub; ++i) ref = strang_step(ref, tau / sub, model);
      return max_diff(strang_step(u, tau, model), ref);
    };
    const double e1 = local_error(0.1);
    const double e2 = local_error(0.05);
    const double order = std::log2(e1 / e2);
    out.push_back(check_at_least("strang_local_order", order, 2.7,
                                 "the Strang step has local error O(tau^3)",
                                 "errors " + fmt(e1) + ", " + fmt(e2)));
  }
  {
    const Grid g(16);
    const ModelSpec model = CubicModel(1);
    const PhysicalState u0 = scaled(random_low_mode_state(g, rng, 2), 0.3);
    const double e0 = energy_hk(u0, model);
    double drift = 0.0;
    evolve(u0, TimeStep::real(1e-3), 1000, model,
           [&](std::int64_t, const PhysicalState& u) {
             drift = std::max(drift, std::abs(energy_hk(u, model) - e0) / std::abs(e0));
           },
           Splitting::kStrang);
    out.push_back(check_at_most("strang_energy_tiny_step", drift, 1e-4,
                                "tiny Strang steps nearly conserve the energy"));
  }
  {
    // Drift bound on a fixture with a long horizon.
    const Grid g(16);
    const PhysicalState u0 = sample_function(FunctionSpec({{0, 1.0}, {-8, 0.1}}), g);
    const ModelSpec model = CubicModel(1);
    const TimeStep step = ResonantStep(1, 8, 2);
    const BoundConstants bc = bound_constants(model, u0, step);
    double lemma = kInf;
    double scheme = kInf;
    double energy = kInf;
    evolve(u0, step, bc.horizon_steps.value_or(0), model, [&](std::int64_t n, const PhysicalState& u) {
      const double h = h1_seminorm(u);
      lemma = std::min(lemma, h - *h1_lower_bound(n, bc));
      scheme = std::min(scheme, h - *scheme_h1_lower_bound(n, bc));
      energy = std::min(energy, energy_hk(u, model) - *energy_lower_bound(n, bc));
    });
    const double slack = -options.tolerance("bound_slack");
    out.push_back(check_at_least("drift_lemma_long_horizon", lemma, slack,
                                 "h1 drift bound holds up to the horizon",
                                 "horizon " + std::to_string(bc.horizon_steps.value_or(0))));
    out.push_back(check_at_least("scheme_bound_long_horizon", scheme, slack,
                                 "scheme h1 bound holds up to the horizon"));
    out.push_back(check_at_least("energy_bound_long_horizon", energy, slack,
                                 "energy bound holds up to the horizon"));
  }
  return out;
}

}  // namespace splitstep
