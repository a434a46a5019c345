#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "splitstep/model.hpp"
#include "splitstep/state.hpp"
#include "splitstep/step.hpp"

namespace splitstep {

// Sign convention: both exact flows multiply by exp(-i t (...)).  The free
// flow acts as V_j -> exp(-i t j^2) V_j and the potential flow as
// U_k -> exp(-i t f(x_k, |U_k|^2)) U_k.  The Lie step applies the potential
// flow first and the free flow second.

/// V_j -> exp(-i t j^2) V_j.
SpectralState free_flow(const SpectralState& v, double t);
/// Free flow over `multiple` steps of a time step; rational steps reduce the
/// phase j^2 p multiple / q^power exactly before evaluation.
SpectralState free_flow(const SpectralState& v, const TimeStep& step, long long multiple = 1);

/// U_k -> exp(-i t f(x_k, |U_k|^2)) U_k.  Moduli are preserved.
PhysicalState potential_flow(const PhysicalState& u, double t, const ModelSpec& model);

/// U -> e^{i tau Delta^K} phi_tau(U).
PhysicalState lie_step(const PhysicalState& u, const TimeStep& step, const ModelSpec& model);
PhysicalState lie_step(const PhysicalState& u, double tau, const ModelSpec& model);

/// Half potential, full free, half potential.
PhysicalState strang_step(const PhysicalState& u, const TimeStep& step, const ModelSpec& model);
PhysicalState strang_step(const PhysicalState& u, double tau, const ModelSpec& model);

enum class Splitting { kLie, kStrang };

/// Called with n = 0 (initial state) and after each step n = 1..N.
using StepObserver = std::function<void(std::int64_t n, const PhysicalState& state)>;

/// Thrown by evolve when a state stops being finite.
class NumericalBlowup : public std::runtime_error {
 public:
  NumericalBlowup(std::int64_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

/// Applies n_steps splitting steps, notifying the observer after each.
/// Returns the final state.  Throws NumericalBlowup naming the first step
/// that produced a NaN or infinity.
PhysicalState evolve(const PhysicalState& u0, const TimeStep& step, std::int64_t n_steps,
                     const ModelSpec& model, const StepObserver& observer = {},
                     Splitting splitting = Splitting::kLie);

}  // namespace splitstep
