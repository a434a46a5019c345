#include "splitstep/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "splitstep/dft.hpp"
#include "splitstep/flows.hpp"

namespace splitstep {

namespace {

bool divisible(long long j, long long q) { return ((j % q) + q) % q == 0; }

// Discrete Fourier coefficient at m, zero outside the centered index set.
Complex coefficient_or_zero(const SpectralState& v, long long m) {
  if (m < v.grid().first_index() || m > v.grid().last_index()) return {0.0, 0.0};
  return v[static_cast<int>(m)];
}

template <typename Accumulate>
void for_each_commutator_entry(const TimeStep& step, const LinearModel& potential,
                               Accumulate&& acc) {
  const Grid& g = potential.grid();
  std::vector<Complex> samples(potential.potential().begin(), potential.potential().end());
  const SpectralState vh = forward_dft(PhysicalState(g, std::move(samples)));
  const long long k_count = g.modes();
  std::vector<Complex> phase(g.modes());
  for (int j = g.first_index(); j <= g.last_index(); ++j) phase[g.slot(j)] = step.free_phase(j);
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    for (int k = g.first_index(); k <= g.last_index(); ++k) {
      const long long d = static_cast<long long>(j) - k;
      const Complex vsum = coefficient_or_zero(vh, d) + coefficient_or_zero(vh, d + k_count) +
                           coefficient_or_zero(vh, d - k_count);
      acc(std::abs(vsum * (phase[g.slot(j)] - phase[g.slot(k)])));
    }
  }
}

}  // namespace

int resonant_kappa(const Grid& grid, long long q) {
  if (q <= 0) throw std::invalid_argument("resonance: q must be positive");
  if (grid.modes() % q != 0) {
    throw std::invalid_argument("resonance: q=" + std::to_string(q) +
                                " does not divide K=" + std::to_string(grid.modes()) +
                                " (need K = kappa q with kappa even)");
  }
  const long long kappa = grid.modes() / q;
  if (kappa % 2 != 0) {
    throw std::invalid_argument("resonance: kappa = K/q = " + std::to_string(kappa) +
                                " is odd (need K = kappa q with kappa even)");
  }
  return static_cast<int>(kappa);
}

PhysicalState project_w(const PhysicalState& u, long long q) {
  const Grid& g = u.grid();
  resonant_kappa(g, q);
  const SpectralState uh = forward_dft(u);
  std::vector<Complex> kept(g.modes());
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    if (divisible(j, q)) kept[g.slot(j)] = uh[j];
  }
  return inverse_dft(SpectralState(g, std::move(kept)));
}

double membership_defect(const PhysicalState& u, long long q) {
  const Grid& g = u.grid();
  resonant_kappa(g, q);
  const SpectralState uh = forward_dft(u);
  double mass = 0.0;
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    if (!divisible(j, q)) mass += std::norm(uh[j]);
  }
  // Parseval: l2_norm^2 = 2 pi sum_j |U^_j|^2
  return std::sqrt(kTwoPi * mass);
}

double commutator_defect(const TimeStep& step, const LinearModel& potential) {
  double worst = 0.0;
  for_each_commutator_entry(step, potential, [&](double e) { worst = std::max(worst, e); });
  return worst;
}

double commutator_defect_frobenius(const TimeStep& step, const LinearModel& potential) {
  double sum = 0.0;
  for_each_commutator_entry(step, potential, [&](double e) { sum += e * e; });
  return std::sqrt(sum);
}

double free_flow_mode_defect(const TimeStep& step, const Grid& grid, int j) {
  if (!grid.contains(j)) throw std::invalid_argument("free_flow_mode_defect: index outside grid");
  std::vector<Complex> basis(grid.modes());
  basis[grid.slot(j)] = 1.0;
  const SpectralState e(grid, std::move(basis));
  const PhysicalState before = inverse_dft(e);
  const PhysicalState after = inverse_dft(free_flow(e, step, 1));
  double worst = 0.0;
  for (int k = grid.first_index(); k <= grid.last_index(); ++k) {
    worst = std::max(worst, std::abs(after[k] - before[k]));
  }
  return worst;
}

double free_flow_identity_defect(const ResonantStep& step, const Grid& grid) {
  resonant_kappa(grid, step.q());
  const TimeStep exact(step);
  const TimeStep floating = TimeStep::real(step.tau());
  double worst = 0.0;
  for (int j = grid.first_index(); j <= grid.last_index(); ++j) {
    if (!divisible(j, step.q())) continue;
    worst = std::max(worst, free_flow_mode_defect(exact, grid, j));
    worst = std::max(worst, free_flow_mode_defect(floating, grid, j));
  }
  return worst;
}

BoundConstants bound_constants(const ModelSpec& model, const PhysicalState& u0,
                               const TimeStep& step) {
  const Grid& g = u0.grid();
  const double dx = g.spacing();
  std::vector<double> profile(g.modes());
  BoundConstants b;
  b.tau = step.tau();
  b.dx = dx;
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    if (!(lin->grid() == g)) throw std::invalid_argument("bound_constants: grid mismatch");
    b.linear = true;
    for (int k = g.first_index(); k <= g.last_index(); ++k) {
      profile[g.slot(k)] = (*lin)[k];
      b.C0 = std::max(b.C0, std::abs((*lin)[k]));
    }
  } else {
    b.linear = false;
    b.sigma = std::get<CubicModel>(model).sigma();
    for (int k = g.first_index(); k <= g.last_index(); ++k) profile[g.slot(k)] = std::norm(u0[k]);
    b.C0 = linf_norm(u0);
  }
  double weighted = 0.0;
  for (int k = g.first_index(); k <= g.last_index(); ++k) {
    const int next = k == g.last_index() ? g.first_index() : k + 1;
    const double quotient = (profile[g.slot(next)] - profile[g.slot(k)]) / dx;
    b.C1 = std::max(b.C1, std::abs(quotient));
    weighted += quotient * quotient * std::norm(u0[k]);
  }
  b.c0 = std::sqrt(dx * weighted);
  b.h1_0 = h1_seminorm(u0);
  b.C2 = b.h1_0;
  b.l2_0 = l2_norm(u0);
  b.no_drift = !(b.c0 > 0.0);
  if (b.C1 > 0.0 && std::abs(b.tau) > 0.0) {
    const double limit = kPi / (std::abs(b.tau) * dx * b.C1);
    b.horizon_steps = static_cast<std::int64_t>(std::floor(limit + 1e-9));
  }
  return b;
}

std::optional<double> h1_lower_bound(std::int64_t n, const BoundConstants& c) {
  if (!c.within_horizon(n)) return std::nullopt;
  return 2.0 / kPi * static_cast<double>(n) * std::abs(c.tau) * c.c0 - c.h1_0;
}

AssembledConstants assembled_constants(const BoundConstants& c, const EquivalenceConstants& eq) {
  AssembledConstants a;
  a.equivalence_lower = eq.lower;
  a.equivalence_upper = eq.upper;
  a.slope_coefficient = 2.0 * std::sqrt(eq.lower) / (kPi * std::sqrt(eq.upper));
  a.offset_weight = std::sqrt(eq.upper / eq.lower);
  a.kinetic_prefactor = kPi * eq.lower;
  a.h1_slope = a.slope_coefficient * c.c0;
  a.energy_root_slope = a.h1_slope * std::sqrt(a.kinetic_prefactor);
  return a;
}

std::optional<double> scheme_h1_lower_bound(std::int64_t n, const BoundConstants& c,
                                            const EquivalenceConstants& eq) {
  if (!c.within_horizon(n)) return std::nullopt;
  const AssembledConstants a = assembled_constants(c, eq);
  return a.slope_coefficient * static_cast<double>(n) * std::abs(c.tau) * c.c0 -
         a.offset_weight * c.h1_0;
}

std::optional<double> energy_lower_bound(std::int64_t n, const BoundConstants& c,
                                         const EquivalenceConstants& eq) {
  const auto h1 = scheme_h1_lower_bound(n, c, eq);
  if (!h1) return std::nullopt;
  const double b = std::max(*h1, 0.0);
  const double pre = kPi * eq.lower;
  const double l = c.l2_0;
  if (c.linear) return pre * b * b - 0.5 * c.C0 * l * l;
  if (c.sigma > 0) return pre * b * b;
  const double l3 = l * l * l;
  const double vertex = l3 / (8.0 * kPi * eq.lower);
  const double h = std::max(b, vertex);
  return pre * h * h - kQuarticEnergyFactor * quartic_bound(l, h);
}

}  // namespace splitstep
