#pragma once

#include <cstdint>
#include <optional>

#include "splitstep/model.hpp"
#include "splitstep/norms.hpp"
#include "splitstep/state.hpp"
#include "splitstep/step.hpp"

namespace splitstep {

/// kappa = K / q.  Throws std::invalid_argument unless q divides K with an
/// even quotient.
int resonant_kappa(const Grid& grid, long long q);

/// Orthogonal projection onto W_{kappa,q}: Fourier coefficients with index
/// not divisible by q are zeroed.
PhysicalState project_w(const PhysicalState& u, long long q);

/// l2 norm of the component of U outside W_{kappa,q}; zero iff U is in it.
double membership_defect(const PhysicalState& u, long long q);

/// max_{j,k} |(V^_{j-k} + V^_{j-k+K} + V^_{j-k-K}) (e_j - e_k)| with
/// e_j = exp(-i tau j^2): the entries of the commutator between the free
/// flow over one step and multiplication by V, in the Fourier basis.
double commutator_defect(const TimeStep& step, const LinearModel& potential);
/// Frobenius norm of the same matrix.
double commutator_defect_frobenius(const TimeStep& step, const LinearModel& potential);

/// max over Fourier basis vectors of W_{kappa,q} of
/// max_k |(e^{i tau Delta^K} u - u)_k|, evaluated both with the exact
/// rational phase and with the floating-point tau; the larger is returned.
double free_flow_identity_defect(const ResonantStep& step, const Grid& grid);

/// Same quantity for the single Fourier basis vector with index j.
double free_flow_mode_defect(const TimeStep& step, const Grid& grid, int j);

/// Quantities entering the explicit drift lower bounds.  W is the phase
/// profile of the potential flow: V for the linear model, |U^0|^2 for the
/// cubic model.
struct BoundConstants {
  double c0 = 0.0;    ///< l2 norm of ((W_{k+1} - W_k) / dx) U^0_k
  double C0 = 0.0;    ///< sup of |V| (linear) or |U^0| (cubic)
  double C1 = 0.0;    ///< sup of |(W_{k+1} - W_k) / dx|
  double C2 = 0.0;    ///< h1 seminorm of U^0
  double h1_0 = 0.0;  ///< same as C2, named for the bound formulas
  double l2_0 = 0.0;  ///< conserved l2 norm
  double tau = 0.0;
  double dx = 0.0;
  bool linear = true;
  int sigma = 1;
  /// Largest n with n tau dx C1 <= pi; nullopt when C1 = 0 (no limit).
  std::optional<std::int64_t> horizon_steps;
  /// c0 = 0: no drift can be guaranteed.
  bool no_drift = false;

  bool within_horizon(std::int64_t n) const noexcept {
    return !horizon_steps || n <= *horizon_steps;
  }
};

BoundConstants bound_constants(const ModelSpec& model, const PhysicalState& u0,
                               const TimeStep& step);

/// (2/pi) n tau c0 - h1_0: lower bound on the h1 seminorm of the n-step
/// potential flow exp(-i n tau W) U^0.  nullopt past the horizon.
std::optional<double> h1_lower_bound(std::int64_t n, const BoundConstants& constants);

/// Lower bound on the h1 seminorm of the n-th split-step iterate for
/// resonant step and data:
///   (2 sqrt(c) / (pi sqrt(C))) n tau c0 - sqrt(C / c) h1_0.
std::optional<double> scheme_h1_lower_bound(std::int64_t n, const BoundConstants& constants,
                                            const EquivalenceConstants& eq = {});

/// Quadratic-in-n lower bound on energy_hk of the n-th iterate, built from
/// b = max(scheme_h1_lower_bound, 0), the conserved l2 norm l and the
/// kinetic prefactor pi c:
///   linear:          pi c b^2 - C0 l^2 / 2
///   cubic, sigma=+1: pi c b^2
///   cubic, sigma=-1: g(max(b, h*)), g(h) = pi c h^2 - (l^4/(2 pi) + h l^3)/4,
///                    h* = l^3 / (8 pi c) the minimizer of g.
std::optional<double> energy_lower_bound(std::int64_t n, const BoundConstants& constants,
                                         const EquivalenceConstants& eq = {});

/// The fully explicit constants behind the bounds above.
struct AssembledConstants {
  double equivalence_lower = 0.0;  ///< c
  double equivalence_upper = 0.0;  ///< C
  double slope_coefficient = 0.0;  ///< 2 sqrt(c) / (pi sqrt(C))
  double offset_weight = 0.0;      ///< sqrt(C / c)
  double kinetic_prefactor = 0.0;  ///< pi c
  /// Asymptotic slope of sqrt(energy bound) per unit time n tau:
  /// slope_coefficient * c0 * sqrt(kinetic_prefactor).
  double energy_root_slope = 0.0;
  /// Slope of the h1 bound per unit time: slope_coefficient * c0.
  double h1_slope = 0.0;
};

AssembledConstants assembled_constants(const BoundConstants& constants,
                                       const EquivalenceConstants& eq = {});

}  // namespace splitstep
