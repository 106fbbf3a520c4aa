#pragma once

#include "adaptmhd/fields.hpp"
#include "adaptmhd/linalg3.hpp"

// Serial reference implementations. They follow independent algorithmic
// routes from the parallel kernels and exist for tests and benchmarks only.
namespace adaptmhd::reference {

// Direct O(n^2) trigonometric sum per line (no FFT).
ScalarField partial_derivative(const ScalarField& f, int axis);

// Cramer's rule, node by node.
VectorField pointwise_solve3(const MatrixField& a, const VectorField& b);

// Classical component formula (d_t X^p - d_p X^t, ...) for the identity metric.
VectorField flat_curl(const VectorField& x);

// Serial g(X, Y).
ScalarField inner(const MetricField& g, const VectorField& x, const VectorField& y);

}  // namespace adaptmhd::reference
