#include "splitstep/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace splitstep {

LinearModel::LinearModel(Grid grid, std::vector<double> potential)
    : grid_(grid), potential_(std::move(potential)) {
  if (static_cast<int>(potential_.size()) != grid_.modes()) {
    throw std::invalid_argument("linear model: potential has " +
                                std::to_string(potential_.size()) + " samples, grid has " +
                                std::to_string(grid_.modes()));
  }
  for (double v : potential_) {
    if (!std::isfinite(v)) throw std::invalid_argument("linear model: non-finite potential");
  }
}

LinearModel LinearModel::from_samples(const PhysicalState& v, double tol) {
  double scale = 0.0;
  for (const auto& c : v.values()) scale = std::max(scale, std::abs(c));
  std::vector<double> re;
  re.reserve(v.values().size());
  for (const auto& c : v.values()) {
    if (std::abs(c.imag()) > tol * std::max(scale, 1.0)) {
      throw std::invalid_argument("linear model: potential must be real, found imaginary part " +
                                  std::to_string(c.imag()));
    }
    re.push_back(c.real());
  }
  return LinearModel(v.grid(), std::move(re));
}

CubicModel::CubicModel(int sigma) : sigma_(sigma) {
  if (sigma != 1 && sigma != -1) {
    throw std::invalid_argument("cubic model: sigma must be +1 or -1, got " +
                                std::to_string(sigma));
  }
}

std::string describe(const ModelSpec& model) {
  if (const auto* c = std::get_if<CubicModel>(&model)) {
    return c->sigma() > 0 ? "cubic(sigma=+1)" : "cubic(sigma=-1)";
  }
  return "linear(K=" + std::to_string(std::get<LinearModel>(model).grid().modes()) + ")";
}

}  // namespace splitstep
