#pragma once

#include <array>
#include <cstddef>
#include <numbers>

namespace adaptmhd {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform periodic tensor grid on T^3 with axes (zeta, theta, phi). Node k on
// axis i sits at k * period[i] / n[i]; storage is row-major with phi fastest.
class Grid3 {
 public:
  static constexpr int kDefaultSize = 32;

  Grid3() : Grid3(kDefaultSize) {}
  explicit Grid3(int n) : Grid3({n, n, n}) {}
  explicit Grid3(std::array<int, 3> n,
                 std::array<double, 3> period = {kTwoPi, kTwoPi, kTwoPi});

  const std::array<int, 3>& n() const { return n_; }
  int n(int axis) const { return n_[axis]; }
  const std::array<double, 3>& period() const { return period_; }
  double period(int axis) const { return period_[axis]; }
  double spacing(int axis) const { return period_[axis] / n_[axis]; }
  double coord(int axis, int k) const { return k * spacing(axis); }

  std::size_t size() const {
    return static_cast<std::size_t>(n_[0]) * n_[1] * n_[2];
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_[1] + j) * n_[2] + k;
  }
  std::array<int, 3> unravel(std::size_t idx) const {
    const int k = static_cast<int>(idx % n_[2]);
    const std::size_t rest = idx / n_[2];
    return {static_cast<int>(rest / n_[1]), static_cast<int>(rest % n_[1]), k};
  }
  // Stride between consecutive nodes along an axis.
  std::size_t stride(int axis) const {
    return axis == 2 ? 1 : axis == 1 ? static_cast<std::size_t>(n_[2])
                                     : static_cast<std::size_t>(n_[1]) * n_[2];
  }

  static const char* axis_name(int axis);

  friend bool operator==(const Grid3&, const Grid3&) = default;

 private:
  std::array<int, 3> n_;
  std::array<double, 3> period_;
};

// Uniform periodic 2D grid, used for coordinate slices (theta, phi) and for
// flow charts (u, v). Node k on axis a sits at origin[a] + k * spacing(a).
class Grid2 {
 public:
  Grid2() : Grid2({Grid3::kDefaultSize, Grid3::kDefaultSize}) {}
  explicit Grid2(std::array<int, 2> n,
                 std::array<double, 2> period = {kTwoPi, kTwoPi},
                 std::array<double, 2> origin = {0.0, 0.0});

  const std::array<int, 2>& n() const { return n_; }
  int n(int axis) const { return n_[axis]; }
  const std::array<double, 2>& period() const { return period_; }
  double period(int axis) const { return period_[axis]; }
  const std::array<double, 2>& origin() const { return origin_; }
  double spacing(int axis) const { return period_[axis] / n_[axis]; }
  double coord(int axis, int k) const { return origin_[axis] + k * spacing(axis); }

  std::size_t size() const { return static_cast<std::size_t>(n_[0]) * n_[1]; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_[1] + j;
  }
  std::size_t stride(int axis) const {
    return axis == 1 ? 1 : static_cast<std::size_t>(n_[1]);
  }

  friend bool operator==(const Grid2&, const Grid2&) = default;

 private:
  std::array<int, 2> n_;
  std::array<double, 2> period_;
  std::array<double, 2> origin_;
};

// Signed minimum-image offset of `d` on a circle of length `period`.
double periodic_offset(double d, double period);

}  // namespace adaptmhd
