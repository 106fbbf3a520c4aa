#pragma once

#include <array>
#include <vector>

#include "adaptmhd/fields.hpp"
#include "adaptmhd/report.hpp"
#include "json.hpp"

namespace adaptmhd {

inline constexpr double kDefaultAdaptedTol = 1e-10;

struct AdaptednessReport {
  double alpha_residual = 0.0;   // max |i_X g - alpha|
  double volume_residual = 0.0;  // max |sqrt(det g) - mu|
  double tolerance = kDefaultAdaptedTol;
  bool verdict = false;

  Report report() const;
};

AdaptednessReport is_adapted(const MetricField& g, const VectorField& x, const KForm& alpha,
                             const VolumeForm& mu, double tol = kDefaultAdaptedTol);

// rho on the grid with rho - 1 supported in `region` (nodes where rho != 1).
struct PerturbationProfile {
  ScalarField rho;
  std::vector<char> region;
  double min_rho = 1.0;
  nlohmann::json support;  // {kind, center, radius, amplitude}
};

// rho = 1 + A exp(1 - 1/(1 - (d/R)^2)) for periodic distance d < R, else 1.
// Throws ParameterError unless A > -1 and 0 < R < min(period)/2.
PerturbationProfile bump_profile(const Grid3& grid, const std::array<double, 3>& center,
                                 double radius, double amplitude);

// g^rho from the frame (X, Y, grad p): Gram matrix diag(alpha(X), rho g(Y,Y),
// g(grad p, grad p)/rho) on the support, g elsewhere. Y solves
// i_Y mu = alpha ^ dp / alpha(X) with alpha = i_X g.
// Throws PositivityError (rho <= 0) and FrameDegeneracyError (X, dp or the
// frame degenerate inside the support).
MetricField perturb_metric(const MetricField& g, const VectorField& x, const ScalarField& p,
                           const PerturbationProfile& profile, const VolumeForm& mu);

// Profile on a periodic (u, v) chart centred at the chart origin:
//   rho = 1 + c beta(r/R) u^2, beta = 1 on r <= R/2 and 0 on r >= R.
// Throws ParameterError unless 0 < R < min(period)/2 and 1 + c R^2 > 0.
struct ChartProfile {
  Field2 rho;
  double c = 0.0;
  double radius = 0.0;
  double min_rho = 1.0;
};

ChartProfile chart_quadratic_profile(const Grid2& chart, double c, double radius);

// C-infinity step: 1 for s <= 1/2, 0 for s >= 1.
double plateau(double s);

}  // namespace adaptmhd
