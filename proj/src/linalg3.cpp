#include "adaptmhd/linalg3.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/parallel.hpp"

namespace adaptmhd {
namespace {

double row_scale(const Mat3& a) {
  double s = 1.0;
  for (const auto& r : a) s *= std::sqrt(dot(r, r));
  return s;
}

}  // namespace

double det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Vec3 mul(const Mat3& m, const Vec3& x) {
  return {dot(m[0], x), dot(m[1], x), dot(m[2], x)};
}

std::optional<Vec3> solve(const Mat3& a_in, const Vec3& b_in, double rel_tol) {
  const double scale = row_scale(a_in);
  if (!(scale > 0.0) || std::abs(det(a_in)) <= rel_tol * scale) {
    return std::nullopt;
  }
  Mat3 a = a_in;
  Vec3 b = b_in;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec3 x{};
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 3; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

std::optional<Mat3> inverse(const Mat3& a, double rel_tol) {
  Mat3 inv{};
  for (int c = 0; c < 3; ++c) {
    Vec3 e{0.0, 0.0, 0.0};
    e[c] = 1.0;
    auto col = solve(a, e, rel_tol);
    if (!col) return std::nullopt;
    for (int r = 0; r < 3; ++r) inv[r][c] = (*col)[r];
  }
  return inv;
}

Mat3 MatrixField::at(std::size_t n) const {
  return {{{m[0][n], m[1][n], m[2][n]},
           {m[3][n], m[4][n], m[5][n]},
           {m[6][n], m[7][n], m[8][n]}}};
}

MatrixField MatrixField::from_metric(const MetricField& g) {
  MatrixField out{g.grid(), {}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.m[3 * i + j] = g[MetricField::slot(i, j)];
  }
  return out;
}

VectorField pointwise_solve3(const MatrixField& a, const VectorField& b,
                             double rel_tol) {
  const std::size_t n = a.grid.size();
  std::array<Array, 3> x{Array(n), Array(n), Array(n)};
  std::vector<char> bad(n, 0);
  parallel::for_each(n, [&](std::size_t i) {
    auto sol = solve(a.at(i), b.at(i), rel_tol);
    if (!sol) {
      bad[i] = 1;
      return;
    }
    for (int c = 0; c < 3; ++c) x[c][i] = (*sol)[c];
  });
  std::size_t worst = n;
  double worst_rel = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!bad[i]) continue;
    const Mat3 m = a.at(i);
    const double scale = row_scale(m);
    const double rel = scale > 0.0 ? std::abs(det(m)) / scale : 0.0;
    if (rel < worst_rel) {
      worst_rel = rel;
      worst = i;
    }
  }
  if (worst < n) {
    throw SingularPointError("pointwise_solve3: singular system", worst,
                             det(a.at(worst)));
  }
  return VectorField(a.grid, std::move(x));
}

}  // namespace adaptmhd
