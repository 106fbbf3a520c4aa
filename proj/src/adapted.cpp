#include "adaptmhd/adapted.hpp"

#include <algorithm>
#include <cmath>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/exterior.hpp"
#include "adaptmhd/linalg3.hpp"
#include "adaptmhd/mhd.hpp"
#include "adaptmhd/parallel.hpp"

namespace adaptmhd {
namespace {

double step_tail(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double norm3(const Vec3& v) { return std::sqrt(dot(v, v)); }

}  // namespace

Report AdaptednessReport::report() const {
  return {"adapted", {{"alpha", alpha_residual}, {"volume", volume_residual}}, tolerance,
          verdict};
}

AdaptednessReport is_adapted(const MetricField& g, const VectorField& x, const KForm& alpha,
                             const VolumeForm& mu, double tol) {
  if (!(g.grid() == mu.grid()) || !(g.grid() == alpha.grid())) {
    throw ShapeError("adaptedness inputs live on different grids");
  }
  AdaptednessReport r;
  r.tolerance = tol;
  r.alpha_residual = max_norm(flat(g, x) - alpha);
  const VolumeForm mg = volume_form(g);
  double v = 0.0;
  for (std::size_t i = 0; i < g.grid().size(); ++i) {
    v = std::max(v, std::abs(mg[i] - mu[i]));
  }
  r.volume_residual = v;
  r.verdict = r.alpha_residual <= tol && r.volume_residual <= tol;
  return r;
}

PerturbationProfile bump_profile(const Grid3& grid, const std::array<double, 3>& center,
                                 double radius, double amplitude) {
  if (!(amplitude > -1.0)) {
    throw ParameterError("bump amplitude must exceed -1, got " + std::to_string(amplitude));
  }
  const double half = 0.5 * std::min({grid.period(0), grid.period(1), grid.period(2)});
  if (!(radius > 0.0 && radius < half)) {
    throw ParameterError("bump radius must lie in (0, " + std::to_string(half) + ")");
  }
  const std::size_t n = grid.size();
  Array rho(n, 1.0);
  parallel::for_each(n, [&](std::size_t i) {
    const auto ijk = grid.unravel(i);
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double o = periodic_offset(grid.coord(a, ijk[a]) - center[a], grid.period(a));
      d2 += o * o;
    }
    const double s2 = d2 / (radius * radius);
    if (s2 < 1.0) rho[i] = 1.0 + amplitude * std::exp(1.0 - 1.0 / (1.0 - s2));
  });
  PerturbationProfile prof;
  prof.region.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) prof.region[i] = rho[i] != 1.0;
  prof.min_rho = *std::min_element(rho.begin(), rho.end());
  prof.rho = ScalarField(grid, std::move(rho));
  prof.support = {{"kind", "ball"},
                  {"center", center},
                  {"radius", radius},
                  {"amplitude", amplitude}};
  return prof;
}

MetricField perturb_metric(const MetricField& g, const VectorField& x, const ScalarField& p,
                           const PerturbationProfile& profile, const VolumeForm& mu) {
  const Grid3& grid = g.grid();
  if (!(profile.rho.grid() == grid)) throw ShapeError("profile lives on another grid");
  const std::size_t n = grid.size();
  const auto rmin = std::min_element(profile.rho.values().begin(), profile.rho.values().end());
  if (!(*rmin > 0.0)) throw PositivityError("rho must be positive", *rmin);

  const KForm alpha = flat(g, x);
  const VectorField y = local_companion(x, alpha, mu, p);
  const VectorField gp = gradient(g, p);
  const ScalarField ax = pairing(alpha, x);
  const ScalarField yy = inner(g, y, y);
  const ScalarField pp = inner(g, gp, gp);
  const double xs = max_norm(x), ps = max_norm(gp);

  // First pass: locate the worst node of each failure mode, deterministically.
  struct Bad {
    std::size_t node = 0;
    double value = 0.0;
    bool hit = false;
  };
  Bad bad_x, bad_p, bad_f;
  std::array<Array, 6> out = g.components();
  std::vector<char> failed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (profile.rho[i] == 1.0) continue;
    const Vec3 xi = x.at(i), yi = y.at(i), pi = gp.at(i);
    const double nx = norm3(xi), np = norm3(pi), ny = norm3(yi);
    if (!(nx > 1e-8 * xs) && (!bad_x.hit || nx < bad_x.value)) bad_x = {i, nx, true};
    if (!(np > 1e-8 * ps) && (!bad_p.hit || np < bad_p.value)) bad_p = {i, np, true};
    const Mat3 f{{{xi[0], yi[0], pi[0]}, {xi[1], yi[1], pi[1]}, {xi[2], yi[2], pi[2]}}};
    const double q = std::abs(det(f)) / std::max(nx * ny * np, 1e-300);
    if (!(q > 1e-10) && (!bad_f.hit || q < bad_f.value)) bad_f = {i, q, true};
  }
  if (bad_x.hit) throw FrameDegeneracyError("X vanishes inside the support", bad_x.node, bad_x.value);
  if (bad_p.hit) throw FrameDegeneracyError("dp vanishes inside the support", bad_p.node, bad_p.value);
  if (bad_f.hit) throw FrameDegeneracyError("frame (X, Y, grad p) degenerate", bad_f.node, bad_f.value);

  parallel::for_each(n, [&](std::size_t i) {
    const double r = profile.rho[i];
    if (r == 1.0) return;
    const Vec3 xi = x.at(i), yi = y.at(i), pi = gp.at(i);
    const Mat3 f{{{xi[0], yi[0], pi[0]}, {xi[1], yi[1], pi[1]}, {xi[2], yi[2], pi[2]}}};
    const auto inv = inverse(f, 0.0);
    if (!inv) {
      failed[i] = 1;
      return;
    }
    const Mat3& fi = *inv;
    const Vec3 dg{ax[i], r * yy[i], pp[i] / r};
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += fi[k][a] * dg[k] * fi[k][b];
        out[MetricField::slot(a, b)][i] = s;
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (failed[i]) throw FrameDegeneracyError("frame not invertible", i, 0.0);
  }
  return MetricField(grid, std::move(out));
}

double plateau(double s) {
  const double a = step_tail(1.0 - s), b = step_tail(s - 0.5);
  return a / (a + b);
}

ChartProfile chart_quadratic_profile(const Grid2& chart, double c, double radius) {
  const double half = 0.5 * std::min(chart.period(0), chart.period(1));
  if (!(radius > 0.0 && radius < half)) {
    throw ParameterError("chart profile radius must lie in (0, " + std::to_string(half) + ")");
  }
  if (!(1.0 + c * radius * radius > 0.0)) {
    throw ParameterError("chart profile not positive: 1 + c R^2 <= 0");
  }
  Array rho(chart.size());
  for (int i = 0; i < chart.n(0); ++i) {
    const double u = periodic_offset(chart.coord(0, i), chart.period(0));
    for (int j = 0; j < chart.n(1); ++j) {
      const double v = periodic_offset(chart.coord(1, j), chart.period(1));
      const double r = std::hypot(u, v);
      rho[chart.index(i, j)] = 1.0 + c * plateau(r / radius) * u * u;
    }
  }
  ChartProfile prof;
  prof.c = c;
  prof.radius = radius;
  prof.min_rho = *std::min_element(rho.begin(), rho.end());
  prof.rho = Field2(chart, std::move(rho));
  return prof;
}

}  // namespace adaptmhd
