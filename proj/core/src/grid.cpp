#include "splitstep/grid.hpp"

#include <stdexcept>
#include <string>

namespace splitstep {

Grid::Grid(int modes) : modes_(modes) {
  if (modes < 4) {
    throw std::invalid_argument("grid: mode count K must be >= 4, got " +
                                std::to_string(modes));
  }
  if (modes % 2 != 0) {
    throw std::invalid_argument("grid: mode count K must be even, got " +
                                std::to_string(modes));
  }
}

int Grid::wrap(long long m) const noexcept {
  const long long k = modes_;
  long long r = ((m % k) + k) % k;  // in [0, K)
  if (r >= k / 2) r -= k;
  return static_cast<int>(r);
}

Grid make_grid(int modes) { return Grid(modes); }

}  // namespace splitstep
