#include "splitstep/flows.hpp"

#include <cmath>
#include <string>

#include "splitstep/dft.hpp"

namespace splitstep {

SpectralState free_flow(const SpectralState& v, double t) {
  return free_flow(v, TimeStep::real(t), 1);
}

SpectralState free_flow(const SpectralState& v, const TimeStep& step, long long multiple) {
  const Grid& g = v.grid();
  std::vector<Complex> out(g.modes());
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    out[g.slot(j)] = step.free_phase(j, multiple) * v[j];
  }
  return SpectralState(g, std::move(out));
}

PhysicalState potential_flow(const PhysicalState& u, double t, const ModelSpec& model) {
  const Grid& g = u.grid();
  std::vector<Complex> out(g.modes());
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    if (!(lin->grid() == g)) {
      throw std::invalid_argument("potential_flow: potential and state grids differ");
    }
    for (int k = g.first_index(); k <= g.last_index(); ++k) {
      out[g.slot(k)] = std::polar(1.0, -t * (*lin)[k]) * u[k];
    }
  } else {
    const double sigma = std::get<CubicModel>(model).sigma();
    for (int k = g.first_index(); k <= g.last_index(); ++k) {
      out[g.slot(k)] = std::polar(1.0, -t * sigma * std::norm(u[k])) * u[k];
    }
  }
  return PhysicalState(g, std::move(out));
}

PhysicalState lie_step(const PhysicalState& u, const TimeStep& step, const ModelSpec& model) {
  const PhysicalState half = potential_flow(u, step.tau(), model);
  return inverse_dft(free_flow(forward_dft(half), step, 1));
}

PhysicalState lie_step(const PhysicalState& u, double tau, const ModelSpec& model) {
  return lie_step(u, TimeStep::real(tau), model);
}

PhysicalState strang_step(const PhysicalState& u, const TimeStep& step, const ModelSpec& model) {
  const double half = 0.5 * step.tau();
  const PhysicalState a = potential_flow(u, half, model);
  const PhysicalState b = inverse_dft(free_flow(forward_dft(a), step, 1));
  return potential_flow(b, half, model);
}

PhysicalState strang_step(const PhysicalState& u, double tau, const ModelSpec& model) {
  return strang_step(u, TimeStep::real(tau), model);
}

namespace {

bool all_finite(const PhysicalState& u) {
  for (const auto& c : u.values()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

}  // namespace

PhysicalState evolve(const PhysicalState& u0, const TimeStep& step, std::int64_t n_steps,
                     const ModelSpec& model, const StepObserver& observer, Splitting splitting) {
  if (n_steps < 0) throw std::invalid_argument("evolve: n_steps must be >= 0");
  if (!all_finite(u0)) throw NumericalBlowup(0, "evolve: initial state is not finite");
  PhysicalState u = u0;
  if (observer) observer(0, u);
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    u = splitting == Splitting::kLie ? lie_step(u, step, model) : strang_step(u, step, model);
    if (!all_finite(u)) {
      throw NumericalBlowup(n, "evolve: non-finite state after step " + std::to_string(n) +
                                   " (tau=" + step.describe() + ")");
    }
    if (observer) observer(n, u);
  }
  return u;
}

}  // namespace splitstep
