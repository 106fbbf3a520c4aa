#pragma once

#include <array>
#include <optional>

#include "adaptmhd/fields.hpp"

namespace adaptmhd {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  // row-major: m[row][col]

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
double det(const Mat3& m);
Vec3 mul(const Mat3& m, const Vec3& x);

// Partial-pivot Gaussian elimination. Returns nullopt when |det| falls below
// `rel_tol` times the product of the row norms.
std::optional<Vec3> solve(const Mat3& a, const Vec3& b, double rel_tol = 1e-12);
std::optional<Mat3> inverse(const Mat3& a, double rel_tol = 1e-12);

// Field of 3x3 matrices, nine arrays in row-major component order.
struct MatrixField {
  Grid3 grid;
  std::array<Array, 9> m;

  Mat3 at(std::size_t node) const;
  static MatrixField from_metric(const MetricField& g);
};

// Solves A x = b at every node. Throws SingularPointError naming the worst
// node when any node is singular.
VectorField pointwise_solve3(const MatrixField& a, const VectorField& b,
                             double rel_tol = 1e-12);

}  // namespace adaptmhd
