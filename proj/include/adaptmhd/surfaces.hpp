#pragma once

#include <array>
#include <optional>

#include "adaptmhd/fields.hpp"
#include "adaptmhd/mhd.hpp"
#include "adaptmhd/report.hpp"

namespace adaptmhd {

using Field2Pair = std::array<Field2, 2>;  // (theta, phi) or (u, v) components

// Coordinate torus {zeta = zeta0} with its induced metric.
struct SurfaceTorus {
  Grid3 parent;
  int slice_index = 0;
  double zeta0 = 0.0;
  Grid2 grid;  // (theta, phi)
  Field2 h_tt, h_tp, h_pp;
  double level = 0.0;

  Field2 restrict(const Array& f) const;
  Field2 restrict(const ScalarField& f) const { return restrict(f.values()); }
};

// Index of the zeta node at zeta0 (within 1e-9 of a period). ParameterError otherwise.
int slice_node(const Grid3& grid, double zeta0);

// Throws NotLevelError when p varies along the slice and CriticalError when
// dp vanishes somewhere on it.
SurfaceTorus extract_slice(const MetricField& g, const ScalarField& p, double zeta0,
                           double tol = 1e-8);

struct SurfaceFrame {
  Field2Pair x_tilde;  // X / alpha(X) restricted
  Field2Pair y;        // companion restricted
  Field2Pair omega;    // dual co-frame: omega(x_tilde) = 1, omega(y) = 0
  Field2Pair eta;      // eta(x_tilde) = 0, eta(y) = 1
  Field2 e, g;         // E = 1/alpha(X), G = g(Y, Y)
  Report residuals;
};

// Requires X and Y tangent to the slice (TangencyError) and independent at
// every node (FrameDegeneracyError).
SurfaceFrame induced_frame_metric(const SurfaceTorus& s, const GuidedFlow& gf,
                                  const MetricField& g, double tol = 1e-10);

// Scalar curvature of E du^2 + G dv^2 on a periodic chart. PositivityError
// unless E, G > 0.
Field2 scalar_curvature_orthogonal(const Field2& e, const Field2& g);

// 2 K from the Brioschi formula for h_tt dt^2 + 2 h_tp dt dp + h_pp dp^2.
Field2 scalar_curvature_2d(const Field2& h_tt, const Field2& h_tp, const Field2& h_pp);
Field2 scalar_curvature_2d(const SurfaceTorus& s);

// Integral of f against the area element of h, and the area itself.
double surface_integral(const SurfaceTorus& s, const Field2& f);
double surface_area(const SurfaceTorus& s);

struct PHarmonicResidual {
  double closedness = 0.0;    // max |d omega|
  double coclosedness = 0.0;  // max |delta(P omega)|
};

// omega = pullback of i_X g; P = 1 / |grad p|_g on the slice unless given.
PHarmonicResidual p_harmonic_check(const SurfaceTorus& s, const MetricField& g,
                                   const VectorField& x, const ScalarField& p,
                                   const std::optional<Field2>& weight = std::nullopt);

// Chart (u, v) -> flow of x_tilde for time u then of y for time v from `base`.
// E, G sampled along the chart. Chart periods are the closure times of the
// two flows (found for constant frames) unless supplied.
struct FlowChart {
  Grid2 grid;
  Field2 e, g;
  std::array<double, 2> base{};
  Field2 theta, phi;  // image of each chart node on the slice
};

FlowChart build_flow_chart(const SurfaceTorus& s, const SurfaceFrame& frame,
                           std::array<double, 2> base, std::array<int, 2> n,
                           std::optional<std::array<double, 2>> periods = std::nullopt);

// Smallest t > 0 with t * w on the period lattice, for constant w.
double closure_time(std::array<double, 2> w, std::array<double, 2> period, int max_winding = 64);

}  // namespace adaptmhd
