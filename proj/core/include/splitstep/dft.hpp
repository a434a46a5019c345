#pragma once

#include <span>

#include "splitstep/state.hpp"

namespace splitstep {

/// (F_K U)_j = (1/K) sum_k exp(-2 i pi j k / K) U_k over the centered index
/// set.  Backed by FFTW; the normalization and index convention match the
/// direct sum to roundoff.
SpectralState forward_dft(const PhysicalState& u);

/// (F_K^{-1} V)_k = sum_j exp(2 i pi k j / K) V_j.  No 1/K factor.
PhysicalState inverse_dft(const SpectralState& v);

/// Direct O(K^2) summation of the same transforms.  Kept as the reference
/// the fast path is checked against.
SpectralState reference_forward_dft(const PhysicalState& u);
PhysicalState reference_inverse_dft(const SpectralState& v);

namespace detail {

enum class FftSign { kMinus, kPlus };

// Unnormalized length-N transform in standard 0-based ordering:
// out[m] = sum_n exp(-+ 2 i pi m n / N) in[n].  Any N >= 1.
void fft(std::span<const Complex> in, std::span<Complex> out, FftSign sign);

}  // namespace detail

}  // namespace splitstep
