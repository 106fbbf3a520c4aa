#include "adaptmhd/grid.hpp"

#include <cmath>
#include <string>

#include "adaptmhd/errors.hpp"

namespace adaptmhd {

Grid3::Grid3(std::array<int, 3> n, std::array<double, 3> period)
    : n_(n), period_(period) {
  for (int a = 0; a < 3; ++a) {
    if (n_[a] < 4 || n_[a] % 2 != 0) {
      throw ParameterError("grid axis " + std::string(axis_name(a)) +
                           " needs an even node count >= 4, got " +
                           std::to_string(n_[a]));
    }
    if (!(period_[a] > 0.0) || !std::isfinite(period_[a])) {
      throw ParameterError("grid period must be positive and finite");
    }
  }
}

const char* Grid3::axis_name(int axis) {
  static constexpr const char* kNames[3] = {"zeta", "theta", "phi"};
  return kNames[axis];
}

Grid2::Grid2(std::array<int, 2> n, std::array<double, 2> period,
             std::array<double, 2> origin)
    : n_(n), period_(period), origin_(origin) {
  for (int a = 0; a < 2; ++a) {
    if (n_[a] < 4 || n_[a] % 2 != 0) {
      throw ParameterError("2D grid needs even node counts >= 4");
    }
    if (!(period_[a] > 0.0) || !std::isfinite(period_[a])) {
      throw ParameterError("2D grid period must be positive and finite");
    }
  }
}

double periodic_offset(double d, double period) {
  return d - period * std::round(d / period);
}

}  // namespace adaptmhd
