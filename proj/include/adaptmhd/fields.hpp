#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "adaptmhd/grid.hpp"

namespace adaptmhd {

using Array = std::vector<double>;

// Scalar node array over a Grid3. Values are finite.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(const Grid3& grid, Array values);
  static ScalarField constant(const Grid3& grid, double value);

  const Grid3& grid() const { return grid_; }
  const Array& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  Grid3 grid_;
  Array values_;
};

// Contravariant components in the coordinate frame (d_zeta, d_theta, d_phi).
class VectorField {
 public:
  VectorField() = default;
  VectorField(const Grid3& grid, std::array<Array, 3> components);
  static VectorField zero(const Grid3& grid);
  static VectorField coordinate(const Grid3& grid, int axis);

  const Grid3& grid() const { return grid_; }
  const Array& operator[](int c) const { return comp_[c]; }
  const std::array<Array, 3>& components() const { return comp_; }
  std::array<double, 3> at(std::size_t node) const {
    return {comp_[0][node], comp_[1][node], comp_[2][node]};
  }

 private:
  Grid3 grid_;
  std::array<Array, 3> comp_;
};

// Differential k-form in the coordinate co-frame. Component order:
//   k = 0: f
//   k = 1: dzeta, dtheta, dphi
//   k = 2: dzeta^dtheta, dzeta^dphi, dtheta^dphi
//   k = 3: dzeta^dtheta^dphi
class KForm {
 public:
  KForm() = default;
  KForm(const Grid3& grid, int degree, std::vector<Array> components);
  static KForm zero(const Grid3& grid, int degree);
  static KForm from_scalar(const ScalarField& f);
  static int component_count(int degree);

  const Grid3& grid() const { return grid_; }
  int degree() const { return degree_; }
  std::size_t component_count() const { return comp_.size(); }
  const Array& operator[](int c) const { return comp_[c]; }
  const std::vector<Array>& components() const { return comp_; }
  ScalarField to_scalar() const;

 private:
  Grid3 grid_;
  int degree_ = 0;
  std::vector<Array> comp_;
};

// Symmetric metric, stored as (zz, zt, zp, tt, tp, pp). Positive definite at
// every node (all leading principal minors > 0), checked on construction.
class MetricField {
 public:
  enum Component { kZZ = 0, kZT, kZP, kTT, kTP, kPP };

  MetricField() = default;
  MetricField(const Grid3& grid, std::array<Array, 6> components);
  static MetricField identity(const Grid3& grid);

  const Grid3& grid() const { return grid_; }
  const Array& operator[](int c) const { return g_[c]; }
  const std::array<Array, 6>& components() const { return g_; }
  // Full component g_ij at a node.
  double at(std::size_t node, int i, int j) const { return g_[slot(i, j)][node]; }
  std::array<std::array<double, 3>, 3> matrix(std::size_t node) const;

  static int slot(int i, int j);

 private:
  Grid3 grid_;
  std::array<Array, 6> g_;
};

// Positively oriented volume form; coordinate component of dzeta^dtheta^dphi.
class VolumeForm {
 public:
  VolumeForm() = default;
  VolumeForm(const Grid3& grid, Array density, bool external);
  static VolumeForm flat(const Grid3& grid);

  const Grid3& grid() const { return grid_; }
  const Array& density() const { return density_; }
  double operator[](std::size_t i) const { return density_[i]; }
  bool external() const { return external_; }
  KForm as_form() const;

 private:
  Grid3 grid_;
  Array density_;
  bool external_ = false;
};

// Scalar node array over a Grid2 (slice or chart).
class Field2 {
 public:
  Field2() = default;
  Field2(const Grid2& grid, Array values);

  const Grid2& grid() const { return grid_; }
  const Array& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  Grid2 grid_;
  Array values_;
};

// Pointwise max over nodes of the Euclidean norm of the components.
double max_abs(std::span<const double> a);
double max_norm(const ScalarField& f);
double max_norm(const VectorField& v);
double max_norm(const KForm& w);
double max_norm(const Field2& f);
double max_norm(const std::vector<Array>& components);

VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);
VectorField scale(const ScalarField& s, const VectorField& a);
KForm operator-(const KForm& a, const KForm& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);

}  // namespace adaptmhd
