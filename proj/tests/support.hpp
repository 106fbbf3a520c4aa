#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "adaptmhd/fields.hpp"
#include "adaptmhd/grid.hpp"

namespace testing_support {

using adaptmhd::Array;
using adaptmhd::Grid3;

inline Array sample(const Grid3& g, const std::function<double(double, double, double)>& f) {
  Array out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto ijk = g.unravel(i);
    out[i] = f(g.coord(0, ijk[0]), g.coord(1, ijk[1]), g.coord(2, ijk[2]));
  }
  return out;
}

// Random trigonometric polynomial with modes |k| <= kmax on each axis.
struct RandomTrig {
  struct Term {
    int k0, k1, k2;
    double amp, phase;
  };
  std::vector<Term> terms;
  double offset = 0.0;

  RandomTrig(std::mt19937& rng, int kmax, int count, double offset_ = 0.0) : offset(offset_) {
    std::uniform_int_distribution<int> k(-kmax, kmax);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < count; ++t) terms.push_back({k(rng), k(rng), k(rng), u(rng), 3.0 * u(rng)});
  }
  double operator()(double z, double t, double p) const {
    double s = offset;
    for (const auto& q : terms) s += q.amp * std::cos(q.k0 * z + q.k1 * t + q.k2 * p + q.phase);
    return s;
  }
  double d(int axis, double z, double t, double p) const {
    double s = 0.0;
    for (const auto& q : terms) {
      const int k = axis == 0 ? q.k0 : axis == 1 ? q.k1 : q.k2;
      s -= k * q.amp * std::sin(q.k0 * z + q.k1 * t + q.k2 * p + q.phase);
    }
    return s;
  }
};

inline adaptmhd::ScalarField random_scalar(const Grid3& g, std::mt19937& rng, int kmax = 3) {
  RandomTrig f(rng, kmax, 6);
  return adaptmhd::ScalarField(g, sample(g, f));
}

inline adaptmhd::VectorField random_vector(const Grid3& g, std::mt19937& rng, int kmax = 3) {
  std::array<Array, 3> c;
  for (auto& a : c) a = sample(g, RandomTrig(rng, kmax, 5));
  return adaptmhd::VectorField(g, std::move(c));
}

inline adaptmhd::KForm random_form(const Grid3& g, int degree, std::mt19937& rng, int kmax = 3) {
  std::vector<Array> c(adaptmhd::KForm::component_count(degree));
  for (auto& a : c) a = sample(g, RandomTrig(rng, kmax, 5));
  return adaptmhd::KForm(g, degree, std::move(c));
}

// Identity plus a small smooth symmetric perturbation; positive definite.
inline adaptmhd::MetricField random_metric(const Grid3& g, std::mt19937& rng, double size = 0.15,
                                           int kmax = 2) {
  std::array<Array, 6> c;
  for (int s = 0; s < 6; ++s) {
    const bool diag = s == 0 || s == 3 || s == 5;
    RandomTrig f(rng, kmax, 3);
    c[s] = sample(g, [&](double z, double t, double p) {
      return (diag ? 1.0 : 0.0) + size * f(z, t, p) / 3.0;
    });
  }
  return adaptmhd::MetricField(g, std::move(c));
}

inline double max_diff(const Array& a, const Array& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing_support
