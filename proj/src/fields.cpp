#include "adaptmhd/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adaptmhd/errors.hpp"

namespace adaptmhd {
namespace {

void check_array(const Array& a, std::size_t expected, const char* what) {
  if (a.size() != expected) {
    throw ShapeError(std::string(what) + ": array has " +
                     std::to_string(a.size()) + " values, grid needs " +
                     std::to_string(expected));
  }
  for (double v : a) {
    if (!std::isfinite(v)) {
      throw ParameterError(std::string(what) + ": non-finite value");
    }
  }
}

}  // namespace

ScalarField::ScalarField(const Grid3& grid, Array values)
    : grid_(grid), values_(std::move(values)) {
  check_array(values_, grid_.size(), "scalar field");
}

ScalarField ScalarField::constant(const Grid3& grid, double value) {
  return ScalarField(grid, Array(grid.size(), value));
}

VectorField::VectorField(const Grid3& grid, std::array<Array, 3> components)
    : grid_(grid), comp_(std::move(components)) {
  for (const auto& c : comp_) check_array(c, grid_.size(), "vector field");
}

VectorField VectorField::zero(const Grid3& grid) {
  return VectorField(grid, {Array(grid.size(), 0.0), Array(grid.size(), 0.0),
                            Array(grid.size(), 0.0)});
}

VectorField VectorField::coordinate(const Grid3& grid, int axis) {
  std::array<Array, 3> c{Array(grid.size(), 0.0), Array(grid.size(), 0.0),
                         Array(grid.size(), 0.0)};
  std::fill(c[axis].begin(), c[axis].end(), 1.0);
  return VectorField(grid, std::move(c));
}

int KForm::component_count(int degree) {
  switch (degree) {
    case 0:
    case 3:
      return 1;
    case 1:
    case 2:
      return 3;
    default:
      throw DegreeError("form degree must be 0..3, got " +
                        std::to_string(degree));
  }
}

KForm::KForm(const Grid3& grid, int degree, std::vector<Array> components)
    : grid_(grid), degree_(degree), comp_(std::move(components)) {
  const int expected = component_count(degree);
  if (static_cast<int>(comp_.size()) != expected) {
    throw ShapeError("degree " + std::to_string(degree) + " form needs " +
                     std::to_string(expected) + " components, got " +
                     std::to_string(comp_.size()));
  }
  for (const auto& c : comp_) check_array(c, grid_.size(), "form");
}

KForm KForm::zero(const Grid3& grid, int degree) {
  return KForm(grid, degree,
               std::vector<Array>(component_count(degree),
                                  Array(grid.size(), 0.0)));
}

KForm KForm::from_scalar(const ScalarField& f) {
  return KForm(f.grid(), 0, {f.values()});
}

ScalarField KForm::to_scalar() const {
  if (comp_.size() != 1) throw DegreeError("form has more than one component");
  return ScalarField(grid_, comp_[0]);
}

int MetricField::slot(int i, int j) {
  if (i > j) std::swap(i, j);
  static constexpr int kSlots[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return kSlots[i][j];
}

MetricField::MetricField(const Grid3& grid, std::array<Array, 6> components)
    : grid_(grid), g_(std::move(components)) {
  for (const auto& c : g_) check_array(c, grid_.size(), "metric");
  double worst = 1.0;
  std::size_t worst_node = 0;
  for (std::size_t n = 0; n < grid_.size(); ++n) {
    const double m1 = g_[kZZ][n];
    const double m2 = g_[kZZ][n] * g_[kTT][n] - g_[kZT][n] * g_[kZT][n];
    const auto a = matrix(n);
    const double m3 =
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
        a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
        a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    const double m = std::min({m1, m2, m3});
    if (m < worst) {
      worst = m;
      worst_node = n;
    }
  }
  if (!(worst > 0.0)) {
    throw PositivityError("metric not positive definite at node " +
                              std::to_string(worst_node),
                          worst);
  }
}

MetricField MetricField::identity(const Grid3& grid) {
  const std::size_t n = grid.size();
  return MetricField(grid, {Array(n, 1.0), Array(n, 0.0), Array(n, 0.0),
                            Array(n, 1.0), Array(n, 0.0), Array(n, 1.0)});
}

std::array<std::array<double, 3>, 3> MetricField::matrix(std::size_t n) const {
  return {{{g_[kZZ][n], g_[kZT][n], g_[kZP][n]},
           {g_[kZT][n], g_[kTT][n], g_[kTP][n]},
           {g_[kZP][n], g_[kTP][n], g_[kPP][n]}}};
}

VolumeForm::VolumeForm(const Grid3& grid, Array density, bool external)
    : grid_(grid), density_(std::move(density)), external_(external) {
  check_array(density_, grid_.size(), "volume form");
  const double lo = *std::min_element(density_.begin(), density_.end());
  if (!(lo > 0.0)) {
    throw PositivityError("volume form must be positively oriented", lo);
  }
}

VolumeForm VolumeForm::flat(const Grid3& grid) {
  return VolumeForm(grid, Array(grid.size(), 1.0), false);
}

KForm VolumeForm::as_form() const { return KForm(grid_, 3, {density_}); }

Field2::Field2(const Grid2& grid, Array values)
    : grid_(grid), values_(std::move(values)) {
  check_array(values_, grid_.size(), "2D field");
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_norm(const std::vector<Array>& components) {
  if (components.empty()) return 0.0;
  const std::size_t n = components.front().size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& c : components) s += c[i] * c[i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

double max_norm(const ScalarField& f) { return max_abs(f.values()); }
double max_norm(const Field2& f) { return max_abs(f.values()); }
double max_norm(const KForm& w) { return max_norm(w.components()); }
double max_norm(const VectorField& v) {
  return max_norm(std::vector<Array>(v.components().begin(), v.components().end()));
}

namespace {

template <class Op>
VectorField combine(const VectorField& a, const VectorField& b, Op op) {
  std::array<Array, 3> c;
  for (int k = 0; k < 3; ++k) {
    c[k].resize(a.grid().size());
    for (std::size_t i = 0; i < c[k].size(); ++i) c[k][i] = op(a[k][i], b[k][i]);
  }
  return VectorField(a.grid(), std::move(c));
}

}  // namespace

VectorField operator-(const VectorField& a, const VectorField& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

VectorField operator*(double s, const VectorField& a) {
  return combine(a, a, [s](double x, double) { return s * x; });
}

VectorField scale(const ScalarField& s, const VectorField& a) {
  std::array<Array, 3> c;
  for (int k = 0; k < 3; ++k) {
    c[k].resize(a.grid().size());
    for (std::size_t i = 0; i < c[k].size(); ++i) c[k][i] = s[i] * a[k][i];
  }
  return VectorField(a.grid(), std::move(c));
}

KForm operator-(const KForm& a, const KForm& b) {
  if (a.degree() != b.degree()) throw DegreeError("form degrees differ");
  std::vector<Array> c(a.component_count());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k].resize(a.grid().size());
    for (std::size_t i = 0; i < c[k].size(); ++i) c[k][i] = a[k][i] - b[k][i];
  }
  return KForm(a.grid(), a.degree(), std::move(c));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  Array c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
  return ScalarField(a.grid(), std::move(c));
}

}  // namespace adaptmhd
