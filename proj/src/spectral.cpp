#include "adaptmhd/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/parallel.hpp"

namespace adaptmhd {
namespace {

struct LinePlans {
  fftw_plan forward;
  fftw_plan backward;
};

// FFTW planning is not thread-safe; execution with the new-array interface is.
const LinePlans& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, LinePlans> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> real(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  LinePlans p{fftw_plan_dft_r2c_1d(n, real.data(), c, flags),
              fftw_plan_dft_c2r_1d(n, c, real.data(), flags)};
  return cache.emplace(n, p).first->second;
}

struct LineScratch {
  std::vector<double> real;
  std::vector<std::complex<double>> spec;
};

LineScratch& scratch(int n) {
  thread_local LineScratch s;
  s.real.resize(n);
  s.spec.resize(n / 2 + 1);
  return s;
}

void derivative_line(const double* in, std::size_t in_stride, double* out,
                     std::size_t out_stride, int n, double period,
                     const LinePlans& plans) {
  LineScratch& s = scratch(n);
  for (int k = 0; k < n; ++k) s.real[k] = in[k * in_stride];
  auto* c = reinterpret_cast<fftw_complex*>(s.spec.data());
  fftw_execute_dft_r2c(plans.forward, s.real.data(), c);
  const double base = kTwoPi / period / n;
  for (int m = 0; m < n / 2; ++m) {
    s.spec[m] *= std::complex<double>(0.0, base * m);
  }
  s.spec[n / 2] = 0.0;
  fftw_execute_dft_c2r(plans.backward, c, s.real.data());
  for (int k = 0; k < n; ++k) out[k * out_stride] = s.real[k];
}

// Lines along an axis of length n with the given stride in a row-major array.
Array derivative_lines(std::span<const double> f, std::size_t total, int n,
                       std::size_t stride, double period) {
  if (f.size() != total) throw ShapeError("derivative: array/grid mismatch");
  Array out(total);
  const LinePlans& plans = plans_for(n);
  const std::size_t lines = total / n;
  parallel::for_each(lines, [&](std::size_t l) {
    const std::size_t base = (l / stride) * (stride * n) + (l % stride);
    derivative_line(f.data() + base, stride, out.data() + base, stride, n,
                    period, plans);
  });
  return out;
}

double dirichlet_weight(double offset, int n, double period) {
  const double t = std::numbers::pi * offset / period;
  if (std::abs(std::sin(t)) < 1e-14) return 1.0;
  return std::sin(n * t) / (n * std::tan(t));
}

}  // namespace

Array partial_derivative(const Grid3& grid, std::span<const double> f, int axis) {
  if (axis < 0 || axis > 2) throw ParameterError("axis must be 0..2");
  return derivative_lines(f, grid.size(), grid.n(axis), grid.stride(axis),
                                 grid.period(axis));
}

ScalarField partial_derivative(const ScalarField& f, int axis) {
  return ScalarField(f.grid(), partial_derivative(f.grid(), f.values(), axis));
}

Array partial_derivative(const Grid2& grid, std::span<const double> f, int axis) {
  if (axis < 0 || axis > 1) throw ParameterError("axis must be 0..1");
  return derivative_lines(f, grid.size(), grid.n(axis), grid.stride(axis),
                                 grid.period(axis));
}

Field2 partial_derivative(const Field2& f, int axis) {
  return Field2(f.grid(), partial_derivative(f.grid(), f.values(), axis));
}

Array derivative_1d(std::span<const double> f, double period) {
  const int n = static_cast<int>(f.size());
  if (n < 4 || n % 2 != 0) throw ParameterError("1D derivative needs even n >= 4");
  Array out(n);
  derivative_line(f.data(), 1, out.data(), 1, n, period, plans_for(n));
  return out;
}

double interpolate(const Field2& f, double x0, double x1) {
  const Grid2& g = f.grid();
  const int n0 = g.n(0);
  const int n1 = g.n(1);
  std::vector<double> w0(n0), w1(n1);
  for (int i = 0; i < n0; ++i) {
    w0[i] = dirichlet_weight(x0 - g.coord(0, i), n0, g.period(0));
  }
  for (int j = 0; j < n1; ++j) {
    w1[j] = dirichlet_weight(x1 - g.coord(1, j), n1, g.period(1));
  }
  double sum = 0.0;
  for (int i = 0; i < n0; ++i) {
    if (w0[i] == 0.0) continue;
    double row = 0.0;
    const double* line = f.values().data() + g.index(i, 0);
    for (int j = 0; j < n1; ++j) row += line[j] * w1[j];
    sum += w0[i] * row;
  }
  return sum;
}

}  // namespace adaptmhd
