#include "adaptmhd/exterior.hpp"

#include <cmath>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/linalg3.hpp"
#include "adaptmhd/parallel.hpp"
#include "adaptmhd/spectral.hpp"

namespace adaptmhd {
namespace {

Array zeros(const Grid3& g) { return Array(g.size(), 0.0); }

Array d(const Grid3& g, const Array& f, int axis) {
  return partial_derivative(g, f, axis);
}

}  // namespace

KForm exterior_derivative(const KForm& w) {
  const Grid3& g = w.grid();
  switch (w.degree()) {
    case 0: {
      return KForm(g, 1, {d(g, w[0], 0), d(g, w[0], 1), d(g, w[0], 2)});
    }
    case 1: {
      // (dw)_ij = d_i w_j - d_j w_i
      const Array d0w1 = d(g, w[1], 0), d1w0 = d(g, w[0], 1);
      const Array d0w2 = d(g, w[2], 0), d2w0 = d(g, w[0], 2);
      const Array d1w2 = d(g, w[2], 1), d2w1 = d(g, w[1], 2);
      std::vector<Array> c(3, zeros(g));
      for (std::size_t n = 0; n < g.size(); ++n) {
        c[0][n] = d0w1[n] - d1w0[n];
        c[1][n] = d0w2[n] - d2w0[n];
        c[2][n] = d1w2[n] - d2w1[n];
      }
      return KForm(g, 2, std::move(c));
    }
    case 2: {
      // d(b01 dz^dt + b02 dz^dp + b12 dt^dp) = (d0 b12 - d1 b02 + d2 b01) vol
      const Array a = d(g, w[2], 0), b = d(g, w[1], 1), c = d(g, w[0], 2);
      Array out(g.size());
      for (std::size_t n = 0; n < g.size(); ++n) out[n] = a[n] - b[n] + c[n];
      return KForm(g, 3, {std::move(out)});
    }
    default:
      throw DegreeError("exterior derivative of a 3-form on a 3-manifold");
  }
}

KForm wedge(const KForm& a, const KForm& b) {
  const int k = a.degree(), l = b.degree();
  if (k + l > 3) {
    throw DegreeError("wedge degree " + std::to_string(k + l) + " exceeds 3");
  }
  const Grid3& g = a.grid();
  const std::size_t n = g.size();
  if (k == 0 || l == 0) {
    const KForm& s = k == 0 ? a : b;
    const KForm& f = k == 0 ? b : a;
    std::vector<Array> c(f.component_count(), zeros(g));
    for (std::size_t q = 0; q < c.size(); ++q) {
      for (std::size_t i = 0; i < n; ++i) c[q][i] = s[0][i] * f[q][i];
    }
    return KForm(g, f.degree(), std::move(c));
  }
  if (k == 1 && l == 1) {
    std::vector<Array> c(3, zeros(g));
    for (std::size_t i = 0; i < n; ++i) {
      c[0][i] = a[0][i] * b[1][i] - a[1][i] * b[0][i];
      c[1][i] = a[0][i] * b[2][i] - a[2][i] * b[0][i];
      c[2][i] = a[1][i] * b[2][i] - a[2][i] * b[1][i];
    }
    return KForm(g, 2, std::move(c));
  }
  // 1-form with 2-form in either order; the sign is (+1) since k*l = 2.
  const KForm& one = k == 1 ? a : b;
  const KForm& two = k == 1 ? b : a;
  Array out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = one[0][i] * two[2][i] - one[1][i] * two[1][i] + one[2][i] * two[0][i];
  }
  return KForm(g, 3, {std::move(out)});
}

KForm interior_product(const VectorField& x, const KForm& w) {
  const Grid3& g = w.grid();
  const std::size_t n = g.size();
  switch (w.degree()) {
    case 1: {
      Array out(n);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[0][i] * w[0][i] + x[1][i] * w[1][i] + x[2][i] * w[2][i];
      }
      return KForm(g, 0, {std::move(out)});
    }
    case 2: {
      std::vector<Array> c(3, zeros(g));
      for (std::size_t i = 0; i < n; ++i) {
        const double b01 = w[0][i], b02 = w[1][i], b12 = w[2][i];
        c[0][i] = -x[1][i] * b01 - x[2][i] * b02;
        c[1][i] = x[0][i] * b01 - x[2][i] * b12;
        c[2][i] = x[0][i] * b02 + x[1][i] * b12;
      }
      return KForm(g, 1, std::move(c));
    }
    case 3: {
      std::vector<Array> c(3, zeros(g));
      for (std::size_t i = 0; i < n; ++i) {
        c[0][i] = w[0][i] * x[2][i];
        c[1][i] = -w[0][i] * x[1][i];
        c[2][i] = w[0][i] * x[0][i];
      }
      return KForm(g, 2, std::move(c));
    }
    default:
      throw DegreeError("interior product of a 0-form");
  }
}

ScalarField pairing(const KForm& w, const VectorField& x) {
  if (w.degree() != 1) throw DegreeError("pairing needs a 1-form");
  return interior_product(x, w).to_scalar();
}

ScalarField inner(const MetricField& g, const VectorField& x, const VectorField& y) {
  const std::size_t n = g.grid().size();
  Array out(n);
  parallel::for_each(n, [&](std::size_t i) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) s += g.at(i, a, b) * x[a][i] * y[b][i];
    }
    out[i] = s;
  });
  return ScalarField(g.grid(), std::move(out));
}

KForm flat(const MetricField& g, const VectorField& x) {
  const std::size_t n = g.grid().size();
  std::vector<Array> c(3, Array(n));
  parallel::for_each(n, [&](std::size_t i) {
    for (int a = 0; a < 3; ++a) {
      c[a][i] = g.at(i, a, 0) * x[0][i] + g.at(i, a, 1) * x[1][i] +
                g.at(i, a, 2) * x[2][i];
    }
  });
  return KForm(g.grid(), 1, std::move(c));
}

VectorField sharp(const MetricField& g, const KForm& w) {
  if (w.degree() != 1) throw DegreeError("sharp needs a 1-form");
  return pointwise_solve3(MatrixField::from_metric(g),
                          VectorField(g.grid(), {w[0], w[1], w[2]}));
}

VolumeForm volume_form(const MetricField& g) {
  const std::size_t n = g.grid().size();
  Array dens(n);
  parallel::for_each(n, [&](std::size_t i) { dens[i] = std::sqrt(det(g.matrix(i))); });
  return VolumeForm(g.grid(), std::move(dens), false);
}

VectorField invert_volume_contraction(const VolumeForm& mu, const KForm& beta) {
  if (beta.degree() != 2) throw DegreeError("volume inversion needs a 2-form");
  const std::size_t n = mu.grid().size();
  std::array<Array, 3> v{Array(n), Array(n), Array(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double m = mu[i];
    if (!(m > 0.0)) {
      throw SingularPointError("volume form vanishes", i, m);
    }
    v[0][i] = beta[2][i] / m;
    v[1][i] = -beta[1][i] / m;
    v[2][i] = beta[0][i] / m;
  }
  return VectorField(mu.grid(), std::move(v));
}

VectorField curl(const MetricField& g, const VectorField& x, const VolumeForm& mu) {
  return invert_volume_contraction(mu, exterior_derivative(flat(g, x)));
}

ScalarField divergence(const VolumeForm& mu, const VectorField& x) {
  const KForm top = exterior_derivative(interior_product(x, mu.as_form()));
  Array s(mu.grid().size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = top[0][i] / mu[i];
  return ScalarField(mu.grid(), std::move(s));
}

VectorField cross(const MetricField& g, const VectorField& x, const VectorField& y,
                  const VolumeForm& mu) {
  return sharp(g, interior_product(y, interior_product(x, mu.as_form())));
}

VectorField gradient(const MetricField& g, const ScalarField& p) {
  return sharp(g, exterior_derivative(KForm::from_scalar(p)));
}

KForm lie_derivative(const VectorField& u, const KForm& w) {
  switch (w.degree()) {
    case 0:
      return interior_product(u, exterior_derivative(w));
    case 3:
      return exterior_derivative(interior_product(u, w));
    default: {
      const KForm a = interior_product(u, exterior_derivative(w));
      const KForm b = exterior_derivative(interior_product(u, w));
      std::vector<Array> c(a.component_count(), Array(w.grid().size()));
      for (std::size_t q = 0; q < c.size(); ++q) {
        for (std::size_t i = 0; i < c[q].size(); ++i) c[q][i] = a[q][i] + b[q][i];
      }
      return KForm(w.grid(), w.degree(), std::move(c));
    }
  }
}

ScalarField directional_derivative(const VectorField& u, const ScalarField& f) {
  return lie_derivative(u, KForm::from_scalar(f)).to_scalar();
}

}  // namespace adaptmhd
