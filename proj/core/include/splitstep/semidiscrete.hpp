#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "splitstep/function_spec.hpp"
#include "splitstep/model.hpp"
#include "splitstep/state.hpp"
#include "splitstep/step.hpp"

namespace splitstep::semidiscrete {

/// Finitely supported Fourier series u(x) = sum_{|k| <= M} u^(k) e^{ikx} on
/// the torus, with u^(k) = (1/2pi) int u(x) e^{-ikx} dx.
class FourierFunction {
 public:
  /// coeffs[k + M] holds u^(k); size must be 2M + 1.
  FourierFunction(int max_mode, std::vector<Complex> coeffs);

  static FourierFunction zero(int max_mode = 0);
  static FourierFunction from_spec(const FunctionSpec& spec);

  int max_mode() const noexcept { return max_mode_; }
  /// u^(k), zero for |k| > M.
  Complex coeff(int k) const noexcept;
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// u^(-k) = conj(u^(k)) within tol.
  bool is_real(double tol = 1e-12) const;

  FourierFunction derivative() const;
  FourierFunction conjugate() const;
  /// Keeps modes |k| <= m (zero-pads when m > M).
  FourierFunction resized(int m) const;
  /// sum_k |u^(k)|, an upper bound for sup |u|.
  double abs_coeff_sum() const;

  /// u(2 pi m / n) for m = 0..n-1; requires n >= 2M + 1.
  std::vector<Complex> sample(int n) const;

  friend FourierFunction operator*(const FourierFunction& a, const FourierFunction& b);
  friend FourierFunction operator+(const FourierFunction& a, const FourierFunction& b);
  friend FourierFunction operator-(const FourierFunction& a, const FourierFunction& b);
  friend FourierFunction operator*(Complex s, const FourierFunction& a);

 private:
  int max_mode_;
  std::vector<Complex> coeffs_;
};

/// (sum_k (1 + k^2)^s |u^(k)|^2)^{1/2}
double hs_norm(const FourierFunction& u, double s);
/// Normalized L2 norm, (1/2pi int |u|^2)^{1/2}.
double l2_norm(const FourierFunction& u);
/// (1/2pi int |u|^4), exact quadrature.
double l4_norm_pow4(const FourierFunction& u);
/// max |u| on a 16x oversampled grid (an estimate from below).
double linf_estimate(const FourierFunction& u);

/// Real potential V(x); conjugate symmetry is checked at construction.
class RealPotential {
 public:
  explicit RealPotential(FourierFunction v, double tol = 1e-12);
  const FourierFunction& function() const noexcept { return v_; }

 private:
  FourierFunction v_;
};

using SemiDiscreteModel = std::variant<RealPotential, CubicModel>;

/// A result carrying the l2 mass that fell outside the retained modes.
struct Truncated {
  FourierFunction value;
  double residual = 0.0;
};

struct PhaseOptions {
  /// Retained modes; default 8 M (1 + ceil(|t| sup|W|)), M the larger input degree.
  std::optional<int> out_modes;
  /// Quadrature grid >= oversampling * (out_modes + M ceil(|t| sup|W|)).
  int oversampling = 4;
  /// Refuse (throw TruncationError) when the residual exceeds this.
  double tolerance = 1e-10;
};

class TruncationError : public std::runtime_error {
 public:
  TruncationError(double residual, const std::string& what)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// exp(-i t W(x)) u(x), projected onto modes |k| <= out_modes.
Truncated potential_phase_apply(const FourierFunction& u, double t, const FourierFunction& w,
                                const PhaseOptions& options = {});

/// n steps of the Lie splitting with tau = 2 pi p / q and potential V in W_q:
/// e^{2 i n pi (p/q) Delta} e^{-2 i n pi (p/q) V} u0.  Throws
/// std::invalid_argument when V has modes outside W_q.
Truncated closed_form_linear(const FourierFunction& u0, const RealPotential& v, long long p,
                             long long q, long long n, const PhaseOptions& options = {});

/// n steps of the Lie splitting for the cubic equation with a resonant step
/// and u0 in W_q: exp(-i sigma n tau |u0|^2) u0.
Truncated closed_form_cubic(const FourierFunction& u0, int sigma, const ResonantStep& step,
                            long long n, const PhaseOptions& options = {});

/// (1/4pi) int |u'|^2 + V |u|^2 dx, or (1/4pi) int |u'|^2 + (sigma/2)|u|^4 dx.
double continuous_energy(const FourierFunction& u, const SemiDiscreteModel& model);

struct LemmaMargin {
  double margin = 0.0;
  double residual = 0.0;
};

/// ||e^{itV} u||_{H1} - (|t| ||V' u||_{L2} - ||u||_{H1}).
LemmaMargin lemma1_margin(const FourierFunction& u, const FourierFunction& v, double t,
                          const PhaseOptions& options = {});

/// ||w u||_{L2} for the exact product.
double product_l2(const FourierFunction& w, const FourierFunction& u);

/// Largest |u^(k)| over k not divisible by q.
double membership_defect(const FourierFunction& u, long long q);

/// Rigorous energy floor: H(u) >= (1/2)(||u||_{H1} - shift)^2 - deficit
/// whenever ||u||_{H1} >= shift, given the conserved L2 norm.
struct EnergyFloor {
  double shift = 0.0;
  double deficit = 0.0;
};
EnergyFloor energy_floor(const SemiDiscreteModel& model, double l2);

/// ||u||_{L4}^4 / (||u||_{H1} ||u||_{L2}^3) and
/// sup|u|^2 / (||u||_{L2} ||u||_{H1}); nullopt for u = 0.
std::optional<double> gn_ratio(const FourierFunction& u);
std::optional<double> linf_ratio(const FourierFunction& u);

}  // namespace splitstep::semidiscrete
