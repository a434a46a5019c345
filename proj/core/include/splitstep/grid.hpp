#pragma once

#include <cstddef>

namespace splitstep {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform periodic grid on [-pi, pi) with an even number K of points.
///
/// Grid points and Fourier indices share the centered index set
/// {-K/2, ..., K/2 - 1}; x_j = 2*pi*j/K.  Storage slots (0-based) are an
/// implementation detail of the state containers and are only exposed
/// through slot()/index().
class Grid {
 public:
  /// Throws std::invalid_argument if K is odd or smaller than 4.
  explicit Grid(int modes);

  int modes() const noexcept { return modes_; }
  double spacing() const noexcept { return kTwoPi / modes_; }

  int first_index() const noexcept { return -modes_ / 2; }
  int last_index() const noexcept { return modes_ / 2 - 1; }
  bool contains(int j) const noexcept {
    return j >= first_index() && j <= last_index();
  }

  double point(int j) const noexcept { return kTwoPi * j / modes_; }

  std::size_t slot(int j) const noexcept {
    return static_cast<std::size_t>(j + modes_ / 2);
  }
  int index(std::size_t slot) const noexcept {
    return static_cast<int>(slot) - modes_ / 2;
  }

  /// Representative of m modulo K inside the centered index set.
  int wrap(long long m) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int modes_;
};

Grid make_grid(int modes);

}  // namespace splitstep
