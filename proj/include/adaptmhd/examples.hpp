#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>

#include "adaptmhd/field_io.hpp"
#include "adaptmhd/fields.hpp"
#include "json.hpp"

namespace adaptmhd {

// Periodic profile of zeta sampled on the zeta nodes, with its derivative.
struct Profile1D {
  Array value;
  Array derivative;
  nlohmann::json label;

  // Derivative taken spectrally from the samples.
  static Profile1D sampled(const Grid3& grid, Array values, nlohmann::json label = "sampled");
  static Profile1D from_function(const Grid3& grid, const std::function<double(double)>& f,
                                 const std::function<double(double)>& df, nlohmann::json label);
  // c0 + sum_k (a_k cos(k z) + b_k sin(k z)), z in units of the zeta period.
  static Profile1D trig(const Grid3& grid, double c0, const std::vector<double>& a,
                        const std::vector<double>& b);
  static Profile1D constant(const Grid3& grid, double c);
};

// Profile of (theta, phi) sampled on one slice, identical on every slice.
struct Profile2D {
  Array value;  // n_theta * n_phi, phi fastest
  nlohmann::json label;

  static Profile2D from_function(const Grid3& grid, const std::function<double(double, double)>& f,
                                 nlohmann::json label);
  static Profile2D half_cos_sum(const Grid3& grid);  // (cos t + cos p) / 2
  static Profile2D cos_product(const Grid3& grid);   // cos t cos p
};

enum class ExampleKind { kFlatFamily, kKillingT3 };

struct ExampleBundle {
  std::string name;
  ExampleKind kind = ExampleKind::kFlatFamily;
  Grid3 grid;
  MetricField g;
  VectorField x;
  VectorField y_closed_form;
  KForm alpha;
  VolumeForm mu;
  ScalarField p;
  nlohmann::json parameters;

  // Kept for reference values.
  Profile1D a, b;
  Profile2D f;
  double iota = 1.0;
  double eps = 0.0;

  FieldBundle to_fields() const;
  nlohmann::json manifest() const;  // bundle.json content
};

// Flat torus, X = a(zeta) d_theta + b(zeta) d_phi, p = (a^2 + b^2)/2.
ExampleBundle example_family_T3(const Grid3& grid, const Profile1D& a, const Profile1D& b);
ExampleBundle example_family_T3(const Grid3& grid = Grid3());

// X = b (d_theta + iota d_phi) with metric g_eps; ParameterError unless
// b > 0, iota != 0 and g_eps is positive definite at every node.
ExampleBundle example_killing_T3(const Grid3& grid, const Profile1D& b, double iota, double eps,
                                 const Profile2D& f);
ExampleBundle example_killing_T3(const Grid3& grid = Grid3(), double eps = 0.05);

using ReferenceValue = std::variant<ScalarField, VectorField>;

// y_norm_sq, bracket_dzeta_x, dzeta_p, y. KindError for other bundles.
std::map<std::string, ReferenceValue> reference_values(const ExampleBundle& bundle);

// Writes the archive plus bundle.json.
void write_example(const std::filesystem::path& dir, const ExampleBundle& bundle);

}  // namespace adaptmhd
