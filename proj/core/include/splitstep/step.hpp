#pragma once

#include <optional>
#include <string>
#include <variant>

#include "splitstep/state.hpp"

namespace splitstep {

/// Rational time step tau = 2 pi p / q^power, power in {1, 2}.
///
/// Stored in canonical form: for power 1, gcd(p, q) = 1; for power 2 the
/// step is kept as a square denominator only when gcd(p, q) = 1, otherwise
/// it is rewritten as the reduced power-1 fraction (2 pi 2/4 becomes
/// 2 pi 1/2, i.e. q = 2).
class ResonantStep {
 public:
  ResonantStep(long long p, long long q, int power = 1);

  long long p() const noexcept { return p_; }
  long long q() const noexcept { return q_; }
  int power() const noexcept { return power_; }
  /// q^power
  long long denominator() const noexcept { return power_ == 1 ? q_ : q_ * q_; }
  double tau() const noexcept;

  /// exp(-i * multiple * tau * j^2), with the angle reduced exactly in
  /// integer arithmetic before evaluation.
  Complex free_phase(long long j, long long multiple = 1) const noexcept;

  std::string describe() const;

  friend bool operator==(const ResonantStep&, const ResonantStep&) = default;

 private:
  long long p_;
  long long q_;
  int power_;
};

/// A step size that is either an exact rational multiple of 2 pi or an
/// arbitrary real number.
class TimeStep {
 public:
  TimeStep(ResonantStep step) : value_(step) {}  // NOLINT(google-explicit-constructor)
  static TimeStep real(double tau);

  double tau() const noexcept;
  bool is_rational() const noexcept { return std::holds_alternative<ResonantStep>(value_); }
  std::optional<ResonantStep> rational() const;

  /// exp(-i * multiple * tau * j^2); exact reduction for rational steps.
  Complex free_phase(long long j, long long multiple = 1) const noexcept;

  std::string describe() const;

 private:
  explicit TimeStep(double tau) : value_(tau) {}
  std::variant<ResonantStep, double> value_;
};

}  // namespace splitstep
