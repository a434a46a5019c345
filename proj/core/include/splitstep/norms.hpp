#pragma once

#include <optional>

#include "splitstep/model.hpp"
#include "splitstep/state.hpp"

namespace splitstep {

/// Discrete norms and energies on the K-point grid.
///
/// Conventions (all fixed here, used everywhere else):
///  - l2_norm is the square root of (2 pi / K) sum_k |U_k|^2.
///  - h1_seminorm is the forward-difference seminorm with periodic wrap,
///    sqrt((2 pi / K) sum_k |(U_{k+1} - U_k) / dx|^2).
///  - kinetic_tk(V) = sum_j j^2 |V_j|^2.  With this scaling the kinetic part
///    of energy_hk is exactly pi * kinetic_tk(F_K U), and the bounds
///    h1^2 / (2 pi) <= kinetic_tk <= (pi / 8) h1^2 hold for every K.
///  - energy_hk(U) = pi * kinetic_tk(F_K U) + potential part, where the
///    potential part is (pi / K) sum_k V_k |U_k|^2 (linear) or
///    (sigma / 4) dx sum_k |U_k|^4 (cubic).  This is the quantity conserved
///    by i dU/dt = Delta^K U + f^K(U) U.

double l2_norm_sq(const PhysicalState& u);
double l2_norm(const PhysicalState& u);

double h1_seminorm_sq(const PhysicalState& u);
double h1_seminorm(const PhysicalState& u);

double kinetic_tk(const SpectralState& v);

double linf_norm(const PhysicalState& u);

/// dx * sum_k |U_k|^4
double quartic_term(const PhysicalState& u);

/// Multiplier of sigma * quartic_term(U) in energy_hk for the cubic model.
inline constexpr double kQuarticEnergyFactor = 0.25;

double energy_hk(const PhysicalState& u, const ModelSpec& model);

/// (pi / K) (U^* Delta^K U + U^* f^K(U) U) evaluated literally as a complex
/// quadratic form, with Delta^K applied through the transform pair.  Its
/// imaginary part is roundoff; its real part equals energy_hk.
Complex energy_quadratic_form(const PhysicalState& u, const ModelSpec& model);

/// quartic_term / (h1 * l2^3); nullopt when h1 or l2 vanishes.
std::optional<double> gn_ratio(const PhysicalState& u);

/// Constants (c, C) with c h1^2 <= kinetic_tk(F_K U) <= C h1^2 for all K.
struct EquivalenceConstants {
  double lower = 1.0 / kTwoPi;
  double upper = kPi / 8.0;
};

/// max_k |U_k|^2 <= l2^2 / (2 pi) + h1 * l2, valid for every K.
double linf_sq_bound(double l2, double h1) noexcept;
/// quartic_term <= l2^4 / (2 pi) + h1 * l2^3, valid for every K.
double quartic_bound(double l2, double h1) noexcept;

struct NormReport {
  double l2 = 0.0;
  double h1 = 0.0;
  double linf = 0.0;
  double kinetic_tk = 0.0;
  double quartic = 0.0;
  double energy_hk = 0.0;
};

NormReport norm_report(const PhysicalState& u, const ModelSpec& model);

}  // namespace splitstep
