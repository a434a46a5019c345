#pragma once

#include <complex>
#include <span>
#include <vector>

#include "splitstep/grid.hpp"

namespace splitstep {

using Complex = std::complex<double>;

/// exp(2 i pi r / n), exact at quarter turns.
Complex root_of_unity(long long r, long long n) noexcept;

namespace detail {

// Immutable vector of K complex numbers indexed by the centered set of a grid.
template <typename Tag>
class GridVector {
 public:
  GridVector(Grid grid, std::vector<Complex> values);

  static GridVector zeros(Grid grid) {
    return GridVector(grid, std::vector<Complex>(grid.modes()));
  }

  const Grid& grid() const noexcept { return grid_; }
  int size() const noexcept { return grid_.modes(); }

  /// Entry at centered index j in {-K/2, ..., K/2-1}.
  const Complex& operator[](int j) const noexcept { return values_[grid_.slot(j)]; }
  /// Bounds-checked; throws std::out_of_range.
  const Complex& at(int j) const;

  /// Entries ordered by ascending centered index.
  std::span<const Complex> values() const noexcept { return values_; }

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

struct PhysicalTag {};
struct SpectralTag {};

}  // namespace detail

/// Values U_k at the grid points x_k.
using PhysicalState = detail::GridVector<detail::PhysicalTag>;
/// Discrete Fourier coefficients U^_j, j in the centered index set.
using SpectralState = detail::GridVector<detail::SpectralTag>;

extern template class detail::GridVector<detail::PhysicalTag>;
extern template class detail::GridVector<detail::SpectralTag>;

}  // namespace splitstep
