#include "splitstep/semidiscrete.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "splitstep/dft.hpp"

namespace splitstep::semidiscrete {

namespace {

int next_pow2(long long n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

bool divisible(long long k, long long q) { return ((k % q) + q) % q == 0; }

// Fourier coefficients |k| <= m of the samples u(2 pi j / n); the mass
// outside that band is returned through residual.
FourierFunction coefficients_from_samples(std::span<const Complex> samples, int m,
                                          double* residual) {
  const int n = static_cast<int>(samples.size());
  if (2 * m + 1 > n) throw std::invalid_argument("from_samples: too few samples for band");
  std::vector<Complex> spectrum(n);
  detail::fft(samples, spectrum, detail::FftSign::kMinus);
  std::vector<Complex> coeffs(2 * m + 1);
  double outside = 0.0;
  for (int s = 0; s < n; ++s) {
    const int k = s < n / 2 ? s : s - n;  // s = n/2 goes to -n/2, always outside
    const Complex c = spectrum[s] / static_cast<double>(n);
    if (std::abs(k) <= m) {
      coeffs[k + m] = c;
    } else {
      outside += std::norm(c);
    }
  }
  if (residual != nullptr) *residual = std::sqrt(outside);
  return FourierFunction(m, std::move(coeffs));
}

}  // namespace

FourierFunction::FourierFunction(int max_mode, std::vector<Complex> coeffs)
    : max_mode_(max_mode), coeffs_(std::move(coeffs)) {
  if (max_mode < 0) throw std::invalid_argument("fourier function: negative max mode");
  if (static_cast<int>(coeffs_.size()) != 2 * max_mode + 1) {
    throw std::invalid_argument("fourier function: expected 2M+1 coefficients");
  }
}

FourierFunction FourierFunction::zero(int max_mode) {
  return FourierFunction(max_mode, std::vector<Complex>(2 * max_mode + 1));
}

FourierFunction FourierFunction::from_spec(const FunctionSpec& spec) {
  const int m = spec.max_abs_mode();
  std::vector<Complex> coeffs(2 * m + 1);
  for (const auto& t : spec.terms()) coeffs[t.mode + m] += t.coeff;
  return FourierFunction(m, std::move(coeffs));
}

Complex FourierFunction::coeff(int k) const noexcept {
  if (std::abs(k) > max_mode_) return {0.0, 0.0};
  return coeffs_[k + max_mode_];
}

bool FourierFunction::is_real(double tol) const {
  for (int k = 0; k <= max_mode_; ++k) {
    if (std::abs(coeff(k) - std::conj(coeff(-k))) > tol) return false;
  }
  return true;
}

FourierFunction FourierFunction::derivative() const {
  std::vector<Complex> out(coeffs_.size());
  for (int k = -max_mode_; k <= max_mode_; ++k) {
    out[k + max_mode_] = Complex(0.0, static_cast<double>(k)) * coeff(k);
  }
  return FourierFunction(max_mode_, std::move(out));
}

FourierFunction FourierFunction::conjugate() const {
  // conj(u)^(k) = conj(u^(-k))
  std::vector<Complex> out(coeffs_.size());
  for (int k = -max_mode_; k <= max_mode_; ++k) out[k + max_mode_] = std::conj(coeff(-k));
  return FourierFunction(max_mode_, std::move(out));
}

FourierFunction FourierFunction::resized(int m) const {
  std::vector<Complex> out(2 * m + 1);
  for (int k = -m; k <= m; ++k) out[k + m] = coeff(k);
  return FourierFunction(m, std::move(out));
}

double FourierFunction::abs_coeff_sum() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

std::vector<Complex> FourierFunction::sample(int n) const {
  if (n < 2 * max_mode_ + 1) throw std::invalid_argument("sample: need n >= 2M+1 points");
  std::vector<Complex> arranged(n);
  for (int k = -max_mode_; k <= max_mode_; ++k) arranged[((k % n) + n) % n] = coeff(k);
  std::vector<Complex> values(n);
  detail::fft(arranged, values, detail::FftSign::kPlus);
  return values;
}

FourierFunction operator*(const FourierFunction& a, const FourierFunction& b) {
  const int m = a.max_mode() + b.max_mode();
  std::vector<Complex> out(2 * m + 1);
  for (int i = -a.max_mode(); i <= a.max_mode(); ++i) {
    const Complex ai = a.coeff(i);
    if (ai == Complex{}) continue;
    for (int j = -b.max_mode(); j <= b.max_mode(); ++j) out[i + j + m] += ai * b.coeff(j);
  }
  return FourierFunction(m, std::move(out));
}

FourierFunction operator+(const FourierFunction& a, const FourierFunction& b) {
  const int m = std::max(a.max_mode(), b.max_mode());
  std::vector<Complex> out(2 * m + 1);
  for (int k = -m; k <= m; ++k) out[k + m] = a.coeff(k) + b.coeff(k);
  return FourierFunction(m, std::move(out));
}

FourierFunction operator-(const FourierFunction& a, const FourierFunction& b) {
  return a + Complex(-1.0, 0.0) * b;
}

FourierFunction operator*(Complex s, const FourierFunction& a) {
  std::vector<Complex> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& c : out) c *= s;
  return FourierFunction(a.max_mode(), std::move(out));
}

double hs_norm(const FourierFunction& u, double s) {
  double sum = 0.0;
  for (int k = -u.max_mode(); k <= u.max_mode(); ++k) {
    sum += std::pow(1.0 + static_cast<double>(k) * k, s) * std::norm(u.coeff(k));
  }
  return std::sqrt(sum);
}

double l2_norm(const FourierFunction& u) { return hs_norm(u, 0.0); }

double l4_norm_pow4(const FourierFunction& u) {
  // |u|^4 has degree 4M; any grid with more than 4M + 1 points is exact.
  const int n = next_pow2(4 * u.max_mode() + 2);
  const auto values = u.sample(n);
  double sum = 0.0;
  for (const auto& v : values) sum += std::norm(v) * std::norm(v);
  return sum / n;
}

double linf_estimate(const FourierFunction& u) {
  const int n = next_pow2(16 * (2 * u.max_mode() + 1));
  double m = 0.0;
  for (const auto& v : u.sample(n)) m = std::max(m, std::abs(v));
  return m;
}

RealPotential::RealPotential(FourierFunction v, double tol) : v_(std::move(v)) {
  if (!v_.is_real(tol)) {
    throw std::invalid_argument("real potential: coefficients are not conjugate symmetric");
  }
}

Truncated potential_phase_apply(const FourierFunction& u, double t, const FourierFunction& w,
                                const PhaseOptions& options) {
  if (!w.is_real()) throw std::invalid_argument("potential_phase_apply: W must be real");
  const int m = std::max({u.max_mode(), w.max_mode(), 1});
  const double spread = std::ceil(std::abs(t) * w.abs_coeff_sum());
  const int out_modes =
      options.out_modes.value_or(static_cast<int>(8.0 * m * (1.0 + spread)));
  const long long wanted = static_cast<long long>(options.oversampling) *
                           (out_modes + static_cast<long long>(m * spread));
  const int n = next_pow2(std::max<long long>({wanted, 2LL * out_modes + 2,
                                               2LL * u.max_mode() + 2, 2LL * w.max_mode() + 2}));
  const auto us = u.sample(n);
  const auto ws = w.sample(n);
  std::vector<Complex> product(n);
  for (int i = 0; i < n; ++i) product[i] = std::polar(1.0, -t * ws[i].real()) * us[i];
  double residual = 0.0;
  FourierFunction value = coefficients_from_samples(product, out_modes, &residual);
  if (residual > options.tolerance) {
    std::ostringstream os;
    os << "potential_phase_apply: truncation residual " << residual << " exceeds tolerance "
       << options.tolerance << " (out_modes=" << out_modes << ", grid=" << n << ")";
    throw TruncationError(residual, os.str());
  }
  return {std::move(value), residual};
}

double membership_defect(const FourierFunction& u, long long q) {
  double worst = 0.0;
  for (int k = -u.max_mode(); k <= u.max_mode(); ++k) {
    if (!divisible(k, q)) worst = std::max(worst, std::abs(u.coeff(k)));
  }
  return worst;
}

Truncated closed_form_linear(const FourierFunction& u0, const RealPotential& v, long long p,
                             long long q, long long n, const PhaseOptions& options) {
  const ResonantStep step(p, q, 1);
  if (membership_defect(v.function(), step.q()) > 1e-12) {
    throw std::invalid_argument("closed_form_linear: V has modes outside W_q (q=" +
                                std::to_string(step.q()) + "); the closed form does not apply");
  }
  const double t = static_cast<double>(n) * step.tau();
  Truncated r = potential_phase_apply(u0, t, v.function(), options);
  const int m = r.value.max_mode();
  std::vector<Complex> out(2 * m + 1);
  for (int k = -m; k <= m; ++k) out[k + m] = step.free_phase(k, n) * r.value.coeff(k);
  return {FourierFunction(m, std::move(out)), r.residual};
}

Truncated closed_form_cubic(const FourierFunction& u0, int sigma, const ResonantStep& step,
                            long long n, const PhaseOptions& options) {
  const CubicModel model(sigma);
  if (membership_defect(u0, step.q()) > 1e-12) {
    throw std::invalid_argument("closed_form_cubic: u0 has modes outside W_q (q=" +
                                std::to_string(step.q()) + "); the closed form does not apply");
  }
  // sigma |u0|^2 as an exact finite series
  const FourierFunction w = Complex(model.sigma(), 0.0) * (u0 * u0.conjugate());
  const double t = static_cast<double>(n) * step.tau();
  return potential_phase_apply(u0, t, w, options);
}

double continuous_energy(const FourierFunction& u, const SemiDiscreteModel& model) {
  double kinetic = 0.0;
  for (int k = -u.max_mode(); k <= u.max_mode(); ++k) {
    kinetic += static_cast<double>(k) * k * std::norm(u.coeff(k));
  }
  kinetic *= 0.5;
  if (const auto* lin = std::get_if<RealPotential>(&model)) {
    const FourierFunction& v = lin->function();
    const int n = next_pow2(2 * u.max_mode() + v.max_mode() + 2);
    const auto us = u.sample(n);
    const auto vs = v.sample(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += vs[i].real() * std::norm(us[i]);
    return kinetic + 0.5 * mean / n;
  }
  const int sigma = std::get<CubicModel>(model).sigma();
  return kinetic + 0.25 * sigma * l4_norm_pow4(u);
}

double product_l2(const FourierFunction& w, const FourierFunction& u) { return l2_norm(w * u); }

LemmaMargin lemma1_margin(const FourierFunction& u, const FourierFunction& v, double t,
                          const PhaseOptions& options) {
  // e^{+itV} u = exp(-i (-t) V) u
  const Truncated phased = potential_phase_apply(u, -t, v, options);
  const double rhs = std::abs(t) * product_l2(v.derivative(), u) - hs_norm(u, 1.0);
  return {hs_norm(phased.value, 1.0) - rhs, phased.residual};
}

EnergyFloor energy_floor(const SemiDiscreteModel& model, double l2) {
  const double l2sq = l2 * l2;
  if (const auto* lin = std::get_if<RealPotential>(&model)) {
    return {0.0, 0.5 * (1.0 + lin->function().abs_coeff_sum()) * l2sq};
  }
  if (std::get<CubicModel>(model).sigma() > 0) return {0.0, 0.5 * l2sq};
  // ||u||_{L4}^4 <= ||u||_inf^2 ||u||^2 <= ||u||^4 + 2 pi ||u||^3 ||u'||
  const double shift = 0.5 * kPi * l2sq * l2;
  return {shift, 0.5 * l2sq + 0.25 * l2sq * l2sq + 0.5 * shift * shift};
}

std::optional<double> gn_ratio(const FourierFunction& u) {
  const double l2 = l2_norm(u);
  const double h1 = hs_norm(u, 1.0);
  if (!(l2 > 0.0)) return std::nullopt;
  return l4_norm_pow4(u) / (h1 * l2 * l2 * l2);
}

std::optional<double> linf_ratio(const FourierFunction& u) {
  const double l2 = l2_norm(u);
  const double h1 = hs_norm(u, 1.0);
  if (!(l2 > 0.0)) return std::nullopt;
  const double sup = linf_estimate(u);
  return sup * sup / (l2 * h1);
}

}  // namespace splitstep::semidiscrete
