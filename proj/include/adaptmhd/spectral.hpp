#pragma once

#include <span>

#include "adaptmhd/fields.hpp"

namespace adaptmhd {

// Periodic spectral derivative along one axis: forward real DFT, multiply
// mode m by i*2*pi*m/period (Nyquist mode dropped), inverse DFT.
ScalarField partial_derivative(const ScalarField& f, int axis);
Array partial_derivative(const Grid3& grid, std::span<const double> f, int axis);

Field2 partial_derivative(const Field2& f, int axis);
Array partial_derivative(const Grid2& grid, std::span<const double> f, int axis);

// One periodic line of n samples over length `period`.
Array derivative_1d(std::span<const double> f, double period);

// Trigonometric interpolant of a periodic 2D field evaluated at (x0, x1).
// Matches the sampled values at nodes; exact for modes below n/2.
double interpolate(const Field2& f, double x0, double x1);

}  // namespace adaptmhd
