#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "splitstep/state.hpp"

namespace splitstep {

/// f(x, |u|^2) = V(x), with V sampled on the grid.
class LinearModel {
 public:
  LinearModel(Grid grid, std::vector<double> potential);
  /// Takes the real part of a sampled potential; throws if any imaginary
  /// part exceeds tol * max|V|.
  static LinearModel from_samples(const PhysicalState& v, double tol = 1e-12);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> potential() const noexcept { return potential_; }
  double operator[](int k) const noexcept { return potential_[grid_.slot(k)]; }

 private:
  Grid grid_;
  std::vector<double> potential_;
};

/// f(x, |u|^2) = sigma |u|^2, sigma = +1 (defocusing) or -1 (focusing).
class CubicModel {
 public:
  explicit CubicModel(int sigma);
  int sigma() const noexcept { return sigma_; }

 private:
  int sigma_;
};

using ModelSpec = std::variant<LinearModel, CubicModel>;

std::string describe(const ModelSpec& model);

}  // namespace splitstep
