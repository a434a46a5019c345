#include "splitstep/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splitstep/dft.hpp"

namespace splitstep {

namespace {

void require_same_grid(const PhysicalState& u, const LinearModel& m) {
  if (!(u.grid() == m.grid())) {
    throw std::invalid_argument("energy: potential and state live on different grids");
  }
}

}  // namespace

double l2_norm_sq(const PhysicalState& u) {
  double sum = 0.0;
  for (const auto& c : u.values()) sum += std::norm(c);
  return u.grid().spacing() * sum;
}

double l2_norm(const PhysicalState& u) { return std::sqrt(l2_norm_sq(u)); }

double h1_seminorm_sq(const PhysicalState& u) {
  const auto v = u.values();
  const std::size_t n = v.size();
  double sum = 0.0;
  for (std::size_t s = 0; s < n; ++s) sum += std::norm(v[(s + 1) % n] - v[s]);
  // dx * sum |dU / dx|^2 = sum |dU|^2 / dx
  return sum / u.grid().spacing();
}

double h1_seminorm(const PhysicalState& u) { return std::sqrt(h1_seminorm_sq(u)); }

double kinetic_tk(const SpectralState& v) {
  const Grid& g = v.grid();
  double sum = 0.0;
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    sum += static_cast<double>(j) * j * std::norm(v[j]);
  }
  return sum;
}

double linf_norm(const PhysicalState& u) {
  double m = 0.0;
  for (const auto& c : u.values()) m = std::max(m, std::abs(c));
  return m;
}

double quartic_term(const PhysicalState& u) {
  double sum = 0.0;
  for (const auto& c : u.values()) {
    const double a = std::norm(c);
    sum += a * a;
  }
  return u.grid().spacing() * sum;
}

double energy_hk(const PhysicalState& u, const ModelSpec& model) {
  const double kinetic = kPi * kinetic_tk(forward_dft(u));
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    require_same_grid(u, *lin);
    const Grid& g = u.grid();
    double pot = 0.0;
    for (int k = g.first_index(); k <= g.last_index(); ++k) pot += (*lin)[k] * std::norm(u[k]);
    return kinetic + kPi / g.modes() * pot;
  }
  const int sigma = std::get<CubicModel>(model).sigma();
  return kinetic + sigma * kQuarticEnergyFactor * quartic_term(u);
}

Complex energy_quadratic_form(const PhysicalState& u, const ModelSpec& model) {
  const Grid& g = u.grid();
  // Delta^K U = F^{-1} diag(j^2) F U
  const SpectralState uh = forward_dft(u);
  std::vector<Complex> scaled(g.modes());
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    scaled[g.slot(j)] = static_cast<double>(j) * j * uh[j];
  }
  const PhysicalState lap = inverse_dft(SpectralState(g, std::move(scaled)));

  Complex form{0.0, 0.0};
  for (int k = g.first_index(); k <= g.last_index(); ++k) {
    form += std::conj(u[k]) * lap[k];
  }
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    require_same_grid(u, *lin);
    for (int k = g.first_index(); k <= g.last_index(); ++k) {
      form += std::conj(u[k]) * (*lin)[k] * u[k];
    }
  } else {
    // f^K(U) = sigma |U_k|^2 carries an extra 1/2 in the conserved form,
    // which together with pi/K gives (sigma/4) dx sum |U|^4.
    const int sigma = std::get<CubicModel>(model).sigma();
    for (int k = g.first_index(); k <= g.last_index(); ++k) {
      form += 0.5 * sigma * std::conj(u[k]) * std::norm(u[k]) * u[k];
    }
  }
  return kPi / g.modes() * form;
}

std::optional<double> gn_ratio(const PhysicalState& u) {
  const double h1 = h1_seminorm(u);
  const double l2 = l2_norm(u);
  if (!(h1 > 0.0) || !(l2 > 0.0)) return std::nullopt;
  return quartic_term(u) / (h1 * l2 * l2 * l2);
}

double linf_sq_bound(double l2, double h1) noexcept { return l2 * l2 / kTwoPi + h1 * l2; }

double quartic_bound(double l2, double h1) noexcept {
  return linf_sq_bound(l2, h1) * l2 * l2;
}

NormReport norm_report(const PhysicalState& u, const ModelSpec& model) {
  NormReport r;
  r.l2 = l2_norm(u);
  r.h1 = h1_seminorm(u);
  r.linf = linf_norm(u);
  r.kinetic_tk = kinetic_tk(forward_dft(u));
  r.quartic = quartic_term(u);
  r.energy_hk = energy_hk(u, model);
  return r;
}

}  // namespace splitstep
