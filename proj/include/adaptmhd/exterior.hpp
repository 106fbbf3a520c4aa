#pragma once

#include "adaptmhd/fields.hpp"

namespace adaptmhd {

/// Exterior derivative of a 0-, 1- or 2-form (spectral partials).
/// Throws DegreeError for 3-forms.
KForm exterior_derivative(const KForm& w);

/// Graded product in component form. Throws DegreeError when k + l > 3.
KForm wedge(const KForm& a, const KForm& b);

/// Contraction on the first slot. Throws DegreeError for 0-forms.
KForm interior_product(const VectorField& x, const KForm& w);

/// omega(X) for a 1-form, pointwise.
ScalarField pairing(const KForm& w, const VectorField& x);

/// g(X, Y) pointwise.
ScalarField inner(const MetricField& g, const VectorField& x, const VectorField& y);

/// Index lowering i_X g.
KForm flat(const MetricField& g, const VectorField& x);

/// Index raising; inverse of flat. Propagates SingularPointError.
VectorField sharp(const MetricField& g, const KForm& w);

/// Riemannian volume form sqrt(det g) dzeta^dtheta^dphi.
VolumeForm volume_form(const MetricField& g);

/// The vector field v with i_v mu = beta, for a 2-form beta.
VectorField invert_volume_contraction(const VolumeForm& mu, const KForm& beta);

/// The curl W of X defined by i_W mu = d(i_X g). mu may differ from mu_g.
VectorField curl(const MetricField& g, const VectorField& x, const VolumeForm& mu);

/// Scalar s with s mu = d(i_X mu).
ScalarField divergence(const VolumeForm& mu, const VectorField& x);

/// X x Y defined by i_{X x Y} g = i_Y i_X mu.
VectorField cross(const MetricField& g, const VectorField& x, const VectorField& y,
                  const VolumeForm& mu);

/// Gradient: i_{grad p} g = dp.
VectorField gradient(const MetricField& g, const ScalarField& p);

/// Lie derivative of a form along u by Cartan's formula
/// L_u w = i_u dw + d(i_u w).
KForm lie_derivative(const VectorField& u, const KForm& w);

/// u(f) = df(u).
ScalarField directional_derivative(const VectorField& u, const ScalarField& f);

}  // namespace adaptmhd
