#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "splitstep/grid.hpp"
#include "splitstep/state.hpp"

namespace oracle {

using splitstep::Complex;
using splitstep::Grid;
using splitstep::PhysicalState;
using splitstep::SpectralState;

inline std::complex<long double> cis(long long num, long long den) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long long r = ((num % den) + den) % den;
  const long double a = 2.0L * pi * static_cast<long double>(r) / static_cast<long double>(den);
  return {std::cos(a), std::sin(a)};
}

/// (1/K) sum_k exp(-2 i pi j k / K) U_k in long double.
inline std::vector<Complex> naive_forward(const PhysicalState& u) {
  const Grid& g = u.grid();
  const int k = g.modes();
  std::vector<Complex> out;
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    std::complex<long double> s = 0;
    for (int m = g.first_index(); m <= g.last_index(); ++m) {
      const Complex z = u[m];
      s += cis(-static_cast<long long>(j) * m, k) * std::complex<long double>(z.real(), z.imag());
    }
    s /= static_cast<long double>(k);
    out.emplace_back(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  }
  return out;
}

inline std::vector<Complex> naive_inverse(const SpectralState& v) {
  const Grid& g = v.grid();
  const int k = g.modes();
  std::vector<Complex> out;
  for (int m = g.first_index(); m <= g.last_index(); ++m) {
    std::complex<long double> s = 0;
    for (int j = g.first_index(); j <= g.last_index(); ++j) {
      const Complex z = v[j];
      s += cis(static_cast<long long>(j) * m, k) * std::complex<long double>(z.real(), z.imag());
    }
    out.emplace_back(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  }
  return out;
}

/// h1^2 computed on the Fourier side: 2 pi sum_j |(e^{i dx j} - 1)/dx|^2 |U^_j|^2.
inline double fourier_side_h1_sq(const PhysicalState& u) {
  const Grid& g = u.grid();
  const auto c = naive_forward(u);
  const double dx = g.spacing();
  double s = 0.0;
  for (int j = g.first_index(); j <= g.last_index(); ++j) {
    const double w = 2.0 * std::sin(0.5 * dx * j) / dx;
    s += w * w * std::norm(c[g.slot(j)]);
  }
  return 2.0 * M_PI * s;
}

/// U^* Delta^K U with Delta^K = F^{-1} diag(j^2) F built as a dense matrix.
inline Complex laplacian_form(const PhysicalState& u) {
  const Grid& g = u.grid();
  const int k = g.modes();
  Complex total = 0.0;
  for (int a = g.first_index(); a <= g.last_index(); ++a) {
    Complex row = 0.0;
    for (int b = g.first_index(); b <= g.last_index(); ++b) {
      std::complex<long double> entry = 0;
      for (int j = g.first_index(); j <= g.last_index(); ++j) {
        entry += static_cast<long double>(j) * j * cis(static_cast<long long>(j) * (a - b), k);
      }
      entry /= static_cast<long double>(k);
      row += Complex(static_cast<double>(entry.real()), static_cast<double>(entry.imag())) * u[b];
    }
    total += std::conj(u[a]) * row;
  }
  return total;
}

inline PhysicalState gaussian_state(const Grid& g, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<Complex> v(static_cast<std::size_t>(g.modes()));
  for (auto& z : v) z = Complex(n(rng), n(rng));
  return PhysicalState(g, std::move(v));
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracle
