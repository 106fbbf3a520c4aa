#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <vector>

#include "adaptmhd/fields.hpp"
#include "adaptmhd/report.hpp"

namespace adaptmhd {

inline constexpr double kDefaultResidualTol = 1e-8;

struct EquilibriumReport {
  VectorField momentum_residual;  // curl X x X + grad p
  ScalarField div_residual;
  double momentum_norm = 0.0;  // max-norm relative to max g(X, X)
  double div_norm = 0.0;       // max-norm relative to max |X|
  double tolerance = kDefaultResidualTol;
  bool verdict = false;

  Report report() const;
};

// Force balance with the orientation of the cross product fixed by
// i_{X x Y} g = i_Y i_X mu, so that curl X x X = -grad p for the equilibria on
// the flat torus; equivalently i_X d(X^flat) + dp = 0. mu defaults to mu_g.
EquilibriumReport mhd_residual(const MetricField& g, const VectorField& x,
                               const ScalarField& p, double tol = kDefaultResidualTol);

// p = -(g(X,X)/2 + P) and its inverse.
ScalarField bernoulli_convert(const MetricField& g, const VectorField& x,
                              const ScalarField& bernoulli);
ScalarField bernoulli_from_pressure(const MetricField& g, const VectorField& x,
                                    const ScalarField& p);

struct BeltramiResult {
  ScalarField lambda;       // 0 on masked nodes
  std::vector<char> mask;   // 1 where |X|_g is below the threshold
  std::size_t masked = 0;
  double colinearity_residual = 0.0;
  double first_integral_residual = 0.0;
};

// lambda = g(curl X, X) / g(X, X) away from the zeros of X. Throws
// AllMaskedError when every node is masked.
BeltramiResult beltrami_factor(const MetricField& g, const VectorField& x,
                               const VolumeForm& mu, double mask_tol = 1e-8);

// (X, alpha, mu, p) plus validation residuals; the companion field is
// computed on first use and shared between copies.
class GuidedFlow {
 public:
  GuidedFlow(VectorField x, KForm alpha, VolumeForm mu, ScalarField p,
             Report validation, double min_alpha_x);

  const VectorField& x() const { return x_; }
  const KForm& alpha() const { return alpha_; }
  const VolumeForm& mu() const { return mu_; }
  const ScalarField& p() const { return p_; }
  const Report& validation() const { return validation_; }
  bool valid() const { return validation_.verdict; }
  double min_alpha_x() const { return min_alpha_x_; }
  const Grid3& grid() const { return x_.grid(); }

  const VectorField& companion() const;
  bool has_companion() const;

 private:
  struct Cache {
    std::once_flag once;
    VectorField y;
    std::atomic<bool> ready{false};
  };
  VectorField x_;
  KForm alpha_;
  VolumeForm mu_;
  ScalarField p_;
  Report validation_;
  double min_alpha_x_;
  std::shared_ptr<Cache> cache_;
};

// Throws PositivityError when min alpha(X) <= 0.
GuidedFlow validate_guided_flow(const VectorField& x, const KForm& alpha,
                                const VolumeForm& mu, const ScalarField& p,
                                double tol = kDefaultResidualTol);

// i_Y mu = alpha ^ dp / alpha(X). Throws ParameterError for an invalid flow.
const VectorField& companion_field(const GuidedFlow& gf);

// Solves i_Y mu = alpha ^ dp / alpha(X) without validating the quadruple.
VectorField local_companion(const VectorField& x, const KForm& alpha,
                            const VolumeForm& mu, const ScalarField& p);

// [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i.
VectorField commutator(const VectorField& x, const VectorField& y);

struct QuasisymmetryResidual {
  double speed = 0.0;  // max |u(alpha(X))|
  double flux = 0.0;   // max |L_u i_X mu|
  double alpha = 0.0;  // max |L_u alpha|
};

QuasisymmetryResidual quasisymmetry_residual(const MetricField& g, const VectorField& x,
                                             const VolumeForm& mu, const VectorField& u);

}  // namespace adaptmhd
