#pragma once

#include <array>
#include <optional>

#include "adaptmhd/fields.hpp"
#include "adaptmhd/mhd.hpp"
#include "adaptmhd/report.hpp"
#include "adaptmhd/surfaces.hpp"

namespace adaptmhd {

// Symmetric 2-tensor in metric storage order (zz, zt, zp, tt, tp, pp), no
// definiteness requirement.
struct SymmetricTensor {
  Grid3 grid;
  std::array<Array, 6> c;
};

// Max over nodes of the Frobenius norm of the full 3x3 matrix.
double max_norm(const SymmetricTensor& t);

// (L_K g)_ij = K^m d_m g_ij + g_mj d_i K^m + g_im d_j K^m.
SymmetricTensor lie_derivative_metric(const MetricField& g, const VectorField& k);

struct SymmetryReport {
  double killing_residual = 0.0;   // |L_K g|
  double field_residual = 0.0;     // |L_K X|
  double pressure_residual = 0.0;  // |K(p)|
  double alpha_residual = 0.0;     // |L_K alpha|, alpha = i_X g
  double volume_residual = 0.0;    // |L_K mu_g|

  Report report(double tol) const;
};

SymmetryReport symmetry_report(const MetricField& g, const VectorField& x, const ScalarField& p,
                               const VectorField& k);

// N = g(Y, Y) on the slice. TangencyError when Y crosses it.
Field2 n_functional(const MetricField& g, const SurfaceTorus& s, const VectorField& y,
                    double tol = 1e-10);

struct GenericityVerdict {
  bool is_generic = false;
  std::size_t peak_node = 0;
  std::array<double, 2> peak{};  // (theta, phi)
  double peak_value = 0.0;
  double runner_up = 0.0;  // max over nodes farther than the radius
  double gap = 0.0;
  double radius = 0.0;
  double min_gap = 0.0;

  Report report() const;
};

// Global max (ties: lowest node index) against the max outside the periodic
// disk of `radius` around it. min_gap defaults to
// max(1e-6 (max f - min f), 64 eps max|f|). ParameterError unless
// 0 < radius < half of each period.
GenericityVerdict genericity_test(const Field2& f, double radius,
                                  std::optional<double> min_gap = std::nullopt);

struct Certificate {
  SurfaceTorus slice;
  Field2 n;
  GenericityVerdict verdict;
  bool certified = false;

  Report report() const;
};

Certificate certify_symmetry_breaking(const MetricField& g, const GuidedFlow& gf, double zeta0,
                                      double radius, std::optional<double> min_gap = std::nullopt);

}  // namespace adaptmhd
