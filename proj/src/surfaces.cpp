#include "adaptmhd/surfaces.hpp"

#include <algorithm>
#include <cmath>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/exterior.hpp"
#include "adaptmhd/spectral.hpp"

namespace adaptmhd {
namespace {

Field2 map2(const Field2& a, const Field2& b, auto op) {
  Array out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return Field2(a.grid(), std::move(out));
}

Field2 d2(const Field2& f, int axis) { return partial_derivative(f, axis); }

double max_pair(const Field2Pair& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v[0].size(); ++i) m = std::max(m, std::hypot(v[0][i], v[1][i]));
  return m;
}

Field2Pair bracket2(const Field2Pair& a, const Field2Pair& b) {
  Field2Pair out;
  for (int i = 0; i < 2; ++i) {
    Array c(a[0].size(), 0.0);
    for (int j = 0; j < 2; ++j) {
      const Field2 db = d2(b[i], j), da = d2(a[i], j);
      for (std::size_t k = 0; k < c.size(); ++k) c[k] += a[j][k] * db[k] - b[j][k] * da[k];
    }
    out[i] = Field2(a[0].grid(), std::move(c));
  }
  return out;
}

double curl2(const Field2Pair& w) {
  const Field2 a = d2(w[1], 0), b = d2(w[0], 1);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool constant(const Field2& f) {
  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  return *hi - *lo <= 1e-12 * std::max(1.0, std::max(std::abs(*lo), std::abs(*hi)));
}

double mean(const Field2& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

}  // namespace

Field2 SurfaceTorus::restrict(const Array& f) const {
  Array out(grid.size());
  for (int j = 0; j < grid.n(0); ++j) {
    for (int k = 0; k < grid.n(1); ++k) out[grid.index(j, k)] = f[parent.index(slice_index, j, k)];
  }
  return Field2(grid, std::move(out));
}

int slice_node(const Grid3& grid, double zeta0) {
  const double h = grid.spacing(0);
  const double t = zeta0 / h;
  const double k = std::round(t);
  if (std::abs(periodic_offset(zeta0 - k * h, grid.period(0))) > 1e-9 * grid.period(0)) {
    throw ParameterError("slice zeta0 = " + std::to_string(zeta0) + " is not a grid node");
  }
  const int n = grid.n(0);
  return ((static_cast<int>(k) % n) + n) % n;
}

SurfaceTorus extract_slice(const MetricField& g, const ScalarField& p, double zeta0,
                           double tol) {
  const Grid3& grid = g.grid();
  SurfaceTorus s;
  s.parent = grid;
  s.slice_index = slice_node(grid, zeta0);
  s.zeta0 = grid.coord(0, s.slice_index);
  s.grid = Grid2({grid.n(1), grid.n(2)}, {grid.period(1), grid.period(2)});
  const KForm dp = exterior_derivative(KForm::from_scalar(p));
  const double scale = std::max(1.0, max_abs(p.values()));
  double tangential = 0.0, weakest = INFINITY;
  for (int j = 0; j < grid.n(1); ++j) {
    for (int k = 0; k < grid.n(2); ++k) {
      const std::size_t i = grid.index(s.slice_index, j, k);
      tangential = std::max({tangential, std::abs(dp[1][i]), std::abs(dp[2][i])});
      weakest = std::min(weakest, std::sqrt(dp[0][i] * dp[0][i] + dp[1][i] * dp[1][i] +
                                            dp[2][i] * dp[2][i]));
    }
  }
  if (tangential > tol * scale) {
    throw NotLevelError("p varies along the slice (max tangential |dp| " +
                        std::to_string(tangential) + ")");
  }
  if (weakest <= tol * scale) {
    throw CriticalError("dp vanishes on the slice (min |dp| " + std::to_string(weakest) + ")");
  }
  s.h_tt = s.restrict(g[MetricField::kTT]);
  s.h_tp = s.restrict(g[MetricField::kTP]);
  s.h_pp = s.restrict(g[MetricField::kPP]);
  s.level = p[grid.index(s.slice_index, 0, 0)];
  return s;
}

SurfaceFrame induced_frame_metric(const SurfaceTorus& s, const GuidedFlow& gf,
                                  const MetricField& g, double tol) {
  const VectorField& x = gf.x();
  const VectorField& y = companion_field(gf);
  const Field2 xz = s.restrict(x[0]), yz = s.restrict(y[0]);
  const double xs = std::max(1.0, max_norm(x)), ys = std::max(1.0, max_norm(y));
  if (max_norm(xz) > tol * xs) throw TangencyError("X crosses the slice");
  if (max_norm(yz) > tol * ys) throw TangencyError("Y crosses the slice");

  const Field2 ax = s.restrict(pairing(gf.alpha(), x));
  SurfaceFrame f;
  for (int a = 0; a < 2; ++a) {
    f.x_tilde[a] = map2(s.restrict(x[a + 1]), ax, [](double u, double w) { return u / w; });
    f.y[a] = s.restrict(y[a + 1]);
  }
  const std::size_t n = s.grid.size();
  Array o0(n), o1(n), e0(n), e1(n);
  std::size_t worst = 0;
  double worst_q = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = f.x_tilde[0][i], b = f.x_tilde[1][i];
    const double c = f.y[0][i], d = f.y[1][i];
    const double det = a * d - b * c;
    const double q = std::abs(det) / std::max(std::hypot(a, b) * std::hypot(c, d), 1e-300);
    if (q < worst_q) {
      worst_q = q;
      worst = i;
    }
    if (!(std::abs(det) > 0.0) || !(q > 1e-12)) {
      throw FrameDegeneracyError("slice frame (X~, Y) degenerate", worst, det);
    }
    o0[i] = d / det;
    o1[i] = -c / det;
    e0[i] = -b / det;
    e1[i] = a / det;
  }
  f.omega = {Field2(s.grid, std::move(o0)), Field2(s.grid, std::move(o1))};
  f.eta = {Field2(s.grid, std::move(e0)), Field2(s.grid, std::move(e1))};
  f.e = map2(ax, ax, [](double u, double) { return 1.0 / u; });
  f.g = s.restrict(inner(g, y, y));

  double dual = 0.0, recon = 0.0, pull = 0.0, hmax = 0.0;
  const KForm& alpha = gf.alpha();
  const Field2 a1 = s.restrict(alpha[1]), a2 = s.restrict(alpha[2]);
  for (std::size_t i = 0; i < n; ++i) {
    const double w0 = f.omega[0][i], w1 = f.omega[1][i];
    const double n0 = f.eta[0][i], n1 = f.eta[1][i];
    dual = std::max({dual, std::abs(w0 * f.x_tilde[0][i] + w1 * f.x_tilde[1][i] - 1.0),
                     std::abs(w0 * f.y[0][i] + w1 * f.y[1][i]),
                     std::abs(n0 * f.x_tilde[0][i] + n1 * f.x_tilde[1][i]),
                     std::abs(n0 * f.y[0][i] + n1 * f.y[1][i] - 1.0)});
    const double E = f.e[i], G = f.g[i];
    const double r00 = s.h_tt[i] - (E * w0 * w0 + G * n0 * n0);
    const double r01 = s.h_tp[i] - (E * w0 * w1 + G * n0 * n1);
    const double r11 = s.h_pp[i] - (E * w1 * w1 + G * n1 * n1);
    recon = std::max(recon, std::sqrt(r00 * r00 + 2 * r01 * r01 + r11 * r11));
    hmax = std::max(hmax, std::sqrt(s.h_tt[i] * s.h_tt[i] + 2 * s.h_tp[i] * s.h_tp[i] +
                                    s.h_pp[i] * s.h_pp[i]));
    pull = std::max(pull, std::hypot(w0 - a1[i], w1 - a2[i]));
  }
  const double amax = std::max(max_norm(a1), max_norm(a2));
  const double cm = max_pair(bracket2(f.x_tilde, f.y));
  f.residuals.name = "surface_frame";
  f.residuals.residuals = {
      {"duality", dual},
      {"reconstruction", relative(recon, hmax)},
      {"omega_pullback", relative(pull, amax)},
      {"d_omega", relative(curl2(f.omega), max_pair(f.omega))},
      {"d_eta", relative(curl2(f.eta), max_pair(f.eta))},
      {"commutator", relative(cm, max_pair(f.x_tilde) * max_pair(f.y))},
  };
  f.residuals.tolerance = tol;
  f.residuals.verdict = std::all_of(f.residuals.residuals.begin(), f.residuals.residuals.end(),
                                    [&](const auto& r) { return r.second <= tol; });
  return f;
}

Field2 scalar_curvature_orthogonal(const Field2& e, const Field2& g) {
  const double emin = *std::min_element(e.values().begin(), e.values().end());
  const double gmin = *std::min_element(g.values().begin(), g.values().end());
  if (!(emin > 0.0) || !(gmin > 0.0)) {
    throw PositivityError("orthogonal metric coefficients must be positive", std::min(emin, gmin));
  }
  const Field2 eu = d2(e, 0), ev = d2(e, 1), gu = d2(g, 0), gv = d2(g, 1);
  const Field2 evv = d2(ev, 1), guu = d2(gu, 0);
  Array s(e.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double E = e[i], G = g[i];
    const double t = (eu[i] * gu[i] + ev[i] * ev[i]) / E + (ev[i] * gv[i] + gu[i] * gu[i]) / G;
    s[i] = -(evv[i] + guu[i] - 0.5 * t) / (E * G);
  }
  return Field2(e.grid(), std::move(s));
}

Field2 scalar_curvature_2d(const Field2& h_tt, const Field2& h_tp, const Field2& h_pp) {
  const std::size_t n = h_tt.size();
  double dmin = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    dmin = std::min({dmin, h_tt[i], h_tt[i] * h_pp[i] - h_tp[i] * h_tp[i]});
  }
  if (!(dmin > 0.0)) throw PositivityError("slice metric not positive definite", dmin);
  const Field2 &E = h_tt, &F = h_tp, &G = h_pp;
  const Field2 eu = d2(E, 0), ev = d2(E, 1), fu = d2(F, 0), fv = d2(F, 1);
  const Field2 gu = d2(G, 0), gv = d2(G, 1);
  const Field2 evv = d2(ev, 1), guu = d2(gu, 0), fuv = d2(fu, 1);
  auto det3 = [](double a, double b, double c, double d, double e, double f, double g,
                 double h, double k) {
    return a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g);
  };
  Array s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = E[i], f = F[i], g = G[i];
    const double da = det3(-0.5 * evv[i] + fuv[i] - 0.5 * guu[i], 0.5 * eu[i], fu[i] - 0.5 * ev[i],
                           fv[i] - 0.5 * gu[i], e, f,
                           0.5 * gv[i], f, g);
    const double db = det3(0.0, 0.5 * ev[i], 0.5 * gu[i],
                           0.5 * ev[i], e, f,
                           0.5 * gu[i], f, g);
    const double w = e * g - f * f;
    s[i] = 2.0 * (da - db) / (w * w);
  }
  return Field2(h_tt.grid(), std::move(s));
}

Field2 scalar_curvature_2d(const SurfaceTorus& s) {
  return scalar_curvature_2d(s.h_tt, s.h_tp, s.h_pp);
}

double surface_integral(const SurfaceTorus& s, const Field2& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum += f[i] * std::sqrt(s.h_tt[i] * s.h_pp[i] - s.h_tp[i] * s.h_tp[i]);
  }
  return sum * s.grid.spacing(0) * s.grid.spacing(1);
}

double surface_area(const SurfaceTorus& s) {
  return surface_integral(s, Field2(s.grid, Array(s.grid.size(), 1.0)));
}

PHarmonicResidual p_harmonic_check(const SurfaceTorus& s, const MetricField& g,
                                   const VectorField& x, const ScalarField& p,
                                   const std::optional<Field2>& weight) {
  const KForm xf = flat(g, x);
  const Field2Pair omega{s.restrict(xf[1]), s.restrict(xf[2])};
  Field2 pw;
  if (weight) {
    pw = *weight;
  } else {
    const VectorField gp = gradient(g, p);
    pw = s.restrict(inner(g, gp, gp));
    Array v(pw.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / std::sqrt(pw[i]);
    pw = Field2(s.grid, std::move(v));
  }
  const std::size_t n = s.grid.size();
  Array j0(n), j1(n), root(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = s.h_tt[i] * s.h_pp[i] - s.h_tp[i] * s.h_tp[i];
    root[i] = std::sqrt(w);
    const double u0 = (s.h_pp[i] * omega[0][i] - s.h_tp[i] * omega[1][i]) / w;
    const double u1 = (-s.h_tp[i] * omega[0][i] + s.h_tt[i] * omega[1][i]) / w;
    j0[i] = root[i] * pw[i] * u0;
    j1[i] = root[i] * pw[i] * u1;
  }
  const Array a = partial_derivative(s.grid, j0, 0), b = partial_derivative(s.grid, j1, 1);
  PHarmonicResidual r;
  r.closedness = curl2(omega);
  for (std::size_t i = 0; i < n; ++i) {
    r.coclosedness = std::max(r.coclosedness, std::abs((a[i] + b[i]) / root[i]));
  }
  return r;
}

double closure_time(std::array<double, 2> w, std::array<double, 2> period, int max_winding) {
  double best = INFINITY;
  for (int a = 0; a < 2; ++a) {
    const int o = 1 - a;
    if (std::abs(w[a]) == 0.0) continue;
    for (int m = 1; m <= max_winding; ++m) {
      const double t = m * period[a] / std::abs(w[a]);
      const double k = t * w[o] / period[o];
      if (std::abs(k - std::round(k)) <= 1e-9 * std::max(1.0, std::abs(k))) {
        best = std::min(best, t);
        break;
      }
    }
  }
  if (!std::isfinite(best)) {
    throw ParameterError("flow does not close within the winding limit");
  }
  return best;
}

FlowChart build_flow_chart(const SurfaceTorus& s, const SurfaceFrame& frame,
                           std::array<double, 2> base, std::array<int, 2> n,
                           std::optional<std::array<double, 2>> periods) {
  constexpr int kSteps = 512;
  for (int a = 0; a < 2; ++a) {
    if (n[a] <= 0 || kSteps % n[a] != 0) {
      throw ParameterError("chart node counts must divide 512");
    }
  }
  std::array<double, 2> L{};
  if (periods) {
    L = *periods;
  } else {
    for (const Field2* c : {&frame.x_tilde[0], &frame.x_tilde[1], &frame.y[0], &frame.y[1]}) {
      if (!constant(*c)) {
        throw ParameterError("chart closure search needs a constant frame; supply periods");
      }
    }
    const std::array<double, 2> per{s.grid.period(0), s.grid.period(1)};
    L[0] = closure_time({mean(frame.x_tilde[0]), mean(frame.x_tilde[1])}, per);
    L[1] = closure_time({mean(frame.y[0]), mean(frame.y[1])}, per);
  }
  FlowChart chart;
  chart.grid = Grid2(n, L);
  chart.base = base;

  using P2 = std::array<double, 2>;
  auto flow = [](const Field2Pair& v, P2 z, double h, int steps) {
    auto f = [&](P2 q) { return P2{interpolate(v[0], q[0], q[1]), interpolate(v[1], q[0], q[1])}; };
    for (int k = 0; k < steps; ++k) {
      const P2 k1 = f(z);
      const P2 k2 = f({z[0] + 0.5 * h * k1[0], z[1] + 0.5 * h * k1[1]});
      const P2 k3 = f({z[0] + 0.5 * h * k2[0], z[1] + 0.5 * h * k2[1]});
      const P2 k4 = f({z[0] + h * k3[0], z[1] + h * k3[1]});
      for (int c = 0; c < 2; ++c) z[c] += h / 6.0 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
    }
    return z;
  };
  const double hu = L[0] / kSteps, hv = L[1] / kSteps;
  const int su = kSteps / n[0], sv = kSteps / n[1];
  const std::size_t nn = chart.grid.size();
  Array th(nn), ph(nn), ee(nn), gg(nn);
  P2 zu = base;
  for (int i = 0; i < n[0]; ++i) {
    if (i > 0) zu = flow(frame.x_tilde, zu, hu, su);
    P2 z = zu;
    for (int j = 0; j < n[1]; ++j) {
      if (j > 0) z = flow(frame.y, z, hv, sv);
      const std::size_t k = chart.grid.index(i, j);
      th[k] = z[0] - s.grid.period(0) * std::floor(z[0] / s.grid.period(0));
      ph[k] = z[1] - s.grid.period(1) * std::floor(z[1] / s.grid.period(1));
      ee[k] = interpolate(frame.e, z[0], z[1]);
      gg[k] = interpolate(frame.g, z[0], z[1]);
    }
  }
  chart.theta = Field2(chart.grid, std::move(th));
  chart.phi = Field2(chart.grid, std::move(ph));
  chart.e = Field2(chart.grid, std::move(ee));
  chart.g = Field2(chart.grid, std::move(gg));
  return chart;
}

}  // namespace adaptmhd
