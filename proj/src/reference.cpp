#include "adaptmhd/reference.hpp"

#include <cmath>

#include "adaptmhd/errors.hpp"

namespace adaptmhd::reference {

ScalarField partial_derivative(const ScalarField& f, int axis) {
  const Grid3& g = f.grid();
  const int n = g.n(axis);
  const std::size_t stride = g.stride(axis);
  const double period = g.period(axis);
  const std::size_t lines = g.size() / n;
  // d/dx of the trigonometric interpolant, Nyquist term dropped:
  //   f'(x_j) = sum_m (2 pi m / L) * (-a_m sin + b_m cos) evaluated directly.
  Array out(g.size(), 0.0);
  std::vector<double> line(n), re(n / 2), im(n / 2);
  for (std::size_t l = 0; l < lines; ++l) {
    const std::size_t base = (l / stride) * (stride * n) + (l % stride);
    for (int k = 0; k < n; ++k) line[k] = f[base + k * stride];
    for (int m = 0; m < n / 2; ++m) {
      double a = 0.0, b = 0.0;
      for (int k = 0; k < n; ++k) {
        const double t = kTwoPi * m * k / n;
        a += line[k] * std::cos(t);
        b += line[k] * std::sin(t);
      }
      re[m] = a;
      im[m] = b;
    }
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int m = 1; m < n / 2; ++m) {
        const double t = kTwoPi * m * j / n;
        // f = (1/n) sum_m c_m e^{i m x} with c_m = re - i im, conjugate pair
        s += 2.0 * (kTwoPi * m / period) * (-re[m] * std::sin(t) + im[m] * std::cos(t));
      }
      out[base + j * stride] = s / n;
    }
  }
  return ScalarField(g, std::move(out));
}

VectorField pointwise_solve3(const MatrixField& a, const VectorField& b) {
  const std::size_t n = a.grid.size();
  std::array<Array, 3> x{Array(n), Array(n), Array(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Mat3 m = a.at(i);
    const double dm = det(m);
    if (dm == 0.0) throw SingularPointError("reference solve: singular", i, dm);
    for (int c = 0; c < 3; ++c) {
      Mat3 r = m;
      for (int row = 0; row < 3; ++row) r[row][c] = b[row][i];
      x[c][i] = det(r) / dm;
    }
  }
  return VectorField(a.grid, std::move(x));
}

VectorField flat_curl(const VectorField& x) {
  const Grid3& g = x.grid();
  auto dd = [&](int comp, int axis) {
    return partial_derivative(ScalarField(g, x[comp]), axis);
  };
  const ScalarField d1x2 = dd(2, 1), d2x1 = dd(1, 2);
  const ScalarField d2x0 = dd(0, 2), d0x2 = dd(2, 0);
  const ScalarField d0x1 = dd(1, 0), d1x0 = dd(0, 1);
  std::array<Array, 3> c{Array(g.size()), Array(g.size()), Array(g.size())};
  for (std::size_t i = 0; i < g.size(); ++i) {
    c[0][i] = d1x2[i] - d2x1[i];
    c[1][i] = d2x0[i] - d0x2[i];
    c[2][i] = d0x1[i] - d1x0[i];
  }
  return VectorField(g, std::move(c));
}

ScalarField inner(const MetricField& g, const VectorField& x, const VectorField& y) {
  Array out(g.grid().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) s += g.at(i, a, b) * x[a][i] * y[b][i];
    }
    out[i] = s;
  }
  return ScalarField(g.grid(), std::move(out));
}

}  // namespace adaptmhd::reference
