#include "splitstep/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace splitstep {

Complex root_of_unity(long long r, long long n) noexcept {
  r %= n;
  if (r < 0) r += n;
  if ((4 * r) % n == 0) {
    switch ((4 * r) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(n));
}

}  // namespace splitstep

namespace splitstep::detail {

template <typename Tag>
GridVector<Tag>::GridVector(Grid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.modes()) {
    throw std::invalid_argument("state: expected " + std::to_string(grid_.modes()) +
                                " values, got " + std::to_string(values_.size()));
  }
}

template <typename Tag>
const Complex& GridVector<Tag>::at(int j) const {
  if (!grid_.contains(j)) {
    throw std::out_of_range("state: index " + std::to_string(j) +
                            " outside {-K/2, ..., K/2-1} for K=" +
                            std::to_string(grid_.modes()));
  }
  return values_[grid_.slot(j)];
}

template class GridVector<PhysicalTag>;
template class GridVector<SpectralTag>;

}  // namespace splitstep::detail
