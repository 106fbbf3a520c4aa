#include "adaptmhd/killing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/exterior.hpp"
#include "adaptmhd/parallel.hpp"
#include "adaptmhd/spectral.hpp"

namespace adaptmhd {

double max_norm(const SymmetricTensor& t) {
  double m = 0.0;
  for (std::size_t i = 0; i < t.grid.size(); ++i) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const double v = t.c[MetricField::slot(a, b)][i];
        s += v * v;
      }
    }
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

SymmetricTensor lie_derivative_metric(const MetricField& g, const VectorField& k) {
  const Grid3& grid = g.grid();
  const std::size_t n = grid.size();
  // dk[i][m] = d_i K^m, dg[m][s] = d_m g_s
  std::array<std::array<Array, 3>, 3> dk;
  std::array<std::array<Array, 6>, 3> dg;
  for (int i = 0; i < 3; ++i) {
    for (int m = 0; m < 3; ++m) dk[i][m] = partial_derivative(grid, k[m], i);
    for (int s = 0; s < 6; ++s) dg[i][s] = partial_derivative(grid, g[s], i);
  }
  SymmetricTensor t{grid, {}};
  for (auto& c : t.c) c.assign(n, 0.0);
  parallel::for_each(n, [&](std::size_t q) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        const int s = MetricField::slot(i, j);
        double v = 0.0;
        for (int m = 0; m < 3; ++m) {
          v += k[m][q] * dg[m][s][q] + g.at(q, m, j) * dk[i][m][q] + g.at(q, i, m) * dk[j][m][q];
        }
        t.c[s][q] = v;
      }
    }
  });
  return t;
}

Report SymmetryReport::report(double tol) const {
  return {"symmetry",
          {{"killing", killing_residual},
           {"field", field_residual},
           {"pressure", pressure_residual},
           {"alpha", alpha_residual},
           {"volume", volume_residual}},
          tol,
          killing_residual <= tol};
}

SymmetryReport symmetry_report(const MetricField& g, const VectorField& x, const ScalarField& p,
                               const VectorField& k) {
  const VolumeForm mu = volume_form(g);
  SymmetryReport r;
  r.killing_residual = max_norm(lie_derivative_metric(g, k));
  r.field_residual = max_norm(commutator(k, x));
  r.pressure_residual = max_norm(directional_derivative(k, p));
  r.alpha_residual = max_norm(lie_derivative(k, flat(g, x)));
  r.volume_residual = max_norm(lie_derivative(k, mu.as_form()));
  return r;
}

Field2 n_functional(const MetricField& g, const SurfaceTorus& s, const VectorField& y,
                    double tol) {
  if (max_norm(s.restrict(y[0])) > tol * std::max(1.0, max_norm(y))) {
    throw TangencyError("Y crosses the slice");
  }
  return s.restrict(inner(g, y, y));
}

Report GenericityVerdict::report() const {
  return {"genericity",
          {{"peak_value", peak_value},
           {"runner_up", runner_up},
           {"gap", gap},
           {"radius", radius},
           {"min_gap", min_gap}},
          min_gap,
          is_generic};
}

GenericityVerdict genericity_test(const Field2& f, double radius, std::optional<double> min_gap) {
  const Grid2& grid = f.grid();
  if (!(radius > 0.0) || !(radius < 0.5 * grid.period(0)) || !(radius < 0.5 * grid.period(1))) {
    throw ParameterError("disk radius must lie below half of each slice period");
  }
  const Array& v = f.values();
  std::size_t peak = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[peak]) peak = i;
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  GenericityVerdict out;
  out.radius = radius;
  out.min_gap = min_gap.value_or(
      std::max(1e-6 * (*hi - *lo),
               64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(*lo), std::abs(*hi))));
  out.peak_node = peak;
  const int pi = static_cast<int>(peak / grid.n(1)), pj = static_cast<int>(peak % grid.n(1));
  out.peak = {grid.coord(0, pi), grid.coord(1, pj)};
  out.peak_value = v[peak];
  double runner = -INFINITY;
  for (int i = 0; i < grid.n(0); ++i) {
    const double du = periodic_offset(grid.coord(0, i) - out.peak[0], grid.period(0));
    for (int j = 0; j < grid.n(1); ++j) {
      const double dv = periodic_offset(grid.coord(1, j) - out.peak[1], grid.period(1));
      if (du * du + dv * dv > radius * radius) runner = std::max(runner, v[grid.index(i, j)]);
    }
  }
  out.runner_up = runner;
  out.gap = out.peak_value - runner;
  out.is_generic = out.gap > 0.0 && out.gap >= out.min_gap;
  return out;
}

Report Certificate::report() const {
  Report r = verdict.report();
  r.name = "certificate";
  r.residuals.insert(r.residuals.begin(), {"zeta0", slice.zeta0});
  r.verdict = certified;
  return r;
}

Certificate certify_symmetry_breaking(const MetricField& g, const GuidedFlow& gf, double zeta0,
                                      double radius, std::optional<double> min_gap) {
  Certificate c;
  c.slice = extract_slice(g, gf.p(), zeta0);
  c.n = n_functional(g, c.slice, companion_field(gf));
  c.verdict = genericity_test(c.n, radius, min_gap);
  c.certified = c.verdict.is_generic;
  return c;
}

}  // namespace adaptmhd
