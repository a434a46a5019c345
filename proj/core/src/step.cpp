#include "splitstep/step.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace splitstep {

namespace {

long long isqrt_exact(long long n) {
  auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

}  // namespace

ResonantStep::ResonantStep(long long p, long long q, int power)
    : p_(p), q_(q), power_(power) {
  if (p <= 0) throw std::invalid_argument("resonant step: p must be positive");
  if (q <= 0) throw std::invalid_argument("resonant step: q must be positive");
  if (power != 1 && power != 2) {
    throw std::invalid_argument("resonant step: power must be 1 or 2");
  }
  const long long g = std::gcd(p_, q_);
  if (power_ == 1) {
    p_ /= g;
    q_ /= g;
    return;
  }
  if (g == 1) return;
  // p / q^2 with a common factor: reduce the fraction and keep a square
  // denominator only if it stays square and coprime with the numerator root.
  long long num = p_;
  long long den = q_ * q_;
  const long long h = std::gcd(num, den);
  num /= h;
  den /= h;
  const long long root = isqrt_exact(den);
  if (root > 0 && std::gcd(num, root) == 1 && root > 1) {
    p_ = num;
    q_ = root;
    power_ = 2;
  } else {
    p_ = num;
    q_ = den;
    power_ = 1;
  }
}

double ResonantStep::tau() const noexcept {
  return kTwoPi * static_cast<double>(p_) / static_cast<double>(denominator());
}

Complex ResonantStep::free_phase(long long j, long long multiple) const noexcept {
  __extension__ using wide = __int128;
  const wide den = denominator();
  wide m = static_cast<wide>(multiple % denominator()) * (p_ % denominator()) % den;
  const wide jj = static_cast<wide>(j) * j % den;
  m = m * jj % den;
  return root_of_unity(-static_cast<long long>(m), denominator());
}

std::string ResonantStep::describe() const {
  std::ostringstream os;
  os << "2pi*" << p_ << "/" << q_ << (power_ == 2 ? "^2" : "");
  return os.str();
}

TimeStep TimeStep::real(double tau) {
  if (!std::isfinite(tau)) throw std::invalid_argument("time step: tau must be finite");
  return TimeStep(tau);
}

double TimeStep::tau() const noexcept {
  if (const auto* r = std::get_if<ResonantStep>(&value_)) return r->tau();
  return std::get<double>(value_);
}

std::optional<ResonantStep> TimeStep::rational() const {
  if (const auto* r = std::get_if<ResonantStep>(&value_)) return *r;
  return std::nullopt;
}

Complex TimeStep::free_phase(long long j, long long multiple) const noexcept {
  if (const auto* r = std::get_if<ResonantStep>(&value_)) return r->free_phase(j, multiple);
  const double t = static_cast<double>(multiple) * std::get<double>(value_);
  return std::polar(1.0, -t * static_cast<double>(j) * static_cast<double>(j));
}

std::string TimeStep::describe() const {
  if (const auto* r = std::get_if<ResonantStep>(&value_)) return r->describe();
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(value_);
  return os.str();
}

}  // namespace splitstep
