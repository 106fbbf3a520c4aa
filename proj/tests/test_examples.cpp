#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/examples.hpp"
#include "adaptmhd/exterior.hpp"
#include "adaptmhd/field_io.hpp"
#include "adaptmhd/linalg3.hpp"
#include "adaptmhd/mhd.hpp"
#include "support.hpp"

using namespace adaptmhd;
using testing_support::max_diff;

namespace {

const Grid3 kGrid;

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST(Examples, KillingMetricHasUnitDeterminant) {
  for (double eps : {0.05, -0.08, 0.2}) {
    const auto e = example_killing_T3(kGrid, eps);
    for (std::size_t i = 0; i < kGrid.size(); i += 7) EXPECT_NEAR(det3(e.g.matrix(i)), 1.0, 1e-14);
    EXPECT_LT(max_diff(volume_form(e.g).density(), e.mu.density()), 1e-14);
  }
}

TEST(Examples, AlphaIsTheFlatOfX) {
  for (const auto& e : {example_family_T3(kGrid), example_killing_T3(kGrid, 0.05),
                        example_killing_T3(kGrid, Profile1D::trig(kGrid, 3.0, {0.5}, {1.0}), -2.0,
                                           0.04, Profile2D::cos_product(kGrid))}) {
    const KForm xf = flat(e.g, e.x);
    for (int c = 0; c < 3; ++c) EXPECT_LT(max_diff(xf[c], e.alpha[c]), 1e-14) << e.name;
  }
}

TEST(Examples, UnperturbedMetricIsExactlyFlat) {
  const auto e = example_killing_T3(kGrid, 0.0);
  EXPECT_EQ(e.g.components(), MetricField::identity(kGrid).components());
}

TEST(Examples, ReferenceValuesAgreeWithOperators) {
  for (double eps : {0.0, 0.05}) {
    const auto e = example_killing_T3(kGrid, eps);
    const auto ref = reference_values(e);
    const auto& nsq = std::get<ScalarField>(ref.at("y_norm_sq"));
    const auto& dzp = std::get<ScalarField>(ref.at("dzeta_p"));
    const auto& br = std::get<VectorField>(ref.at("bracket_dzeta_x"));
    const auto& y = std::get<VectorField>(ref.at("y"));
    const VectorField yc = local_companion(e.x, e.alpha, e.mu, e.p);
    EXPECT_LT(max_norm(yc - y), 1e-12);
    EXPECT_LT(max_diff(inner(e.g, yc, yc).values(), nsq.values()), 1e-12);
    const VectorField dz = VectorField::coordinate(kGrid, 0);
    EXPECT_LT(max_diff(directional_derivative(dz, e.p).values(), dzp.values()), 1e-12);
    EXPECT_LT(max_norm(commutator(dz, e.x) - br), 1e-12);
  }
  EXPECT_THROW(reference_values(example_family_T3(kGrid)), KindError);
}

TEST(Examples, FlatFamilyCompanionClosedForm) {
  const auto e = example_family_T3(kGrid);
  EXPECT_LT(max_norm(local_companion(e.x, e.alpha, e.mu, e.p) - e.y_closed_form), 1e-12);
}

TEST(Examples, SamePressureForEveryEps) {
  const auto a = example_killing_T3(kGrid, 0.0), b = example_killing_T3(kGrid, 0.07);
  EXPECT_EQ(a.p.values(), b.p.values());
  EXPECT_EQ(a.x.components(), b.x.components());
  EXPECT_GT(max_diff(a.g[MetricField::kTP], b.g[MetricField::kTP]), 1e-2);
}

TEST(Examples, ParameterChecks) {
  const auto b = Profile1D::trig(kGrid, 2.0, {}, {1.0});
  const auto f = Profile2D::half_cos_sum(kGrid);
  EXPECT_THROW(example_killing_T3(kGrid, 0.6), ParameterError);  // 1 - 2 eps f <= 0
  EXPECT_THROW(example_killing_T3(kGrid, -0.6), ParameterError);
  EXPECT_NO_THROW(example_killing_T3(kGrid, 0.45));
  EXPECT_THROW(example_killing_T3(kGrid, b, 0.0, 0.05, f), ParameterError);
  EXPECT_THROW(example_killing_T3(kGrid, Profile1D::trig(kGrid, 0.5, {}, {1.0}), 1.0, 0.05, f),
               ParameterError);
  EXPECT_THROW(example_family_T3(kGrid, Profile1D::constant(Grid3(16), 1.0), b), ShapeError);
}

TEST(Examples, ConstantProfilesAreTranslationInvariant) {
  const auto e = example_killing_T3(kGrid, Profile1D::constant(kGrid, 1.5), 0.5, 0.05,
                                    Profile2D::half_cos_sum(kGrid));
  EXPECT_LT(max_norm(e.y_closed_form), 1e-15);
  EXPECT_LT(max_norm(directional_derivative(VectorField::coordinate(kGrid, 0), e.p)), 1e-14);
  EXPECT_TRUE(mhd_residual(e.g, e.x, e.p).verdict);
}

TEST(Examples, SampledProfileDerivative) {
  const auto exact = Profile1D::trig(kGrid, 1.0, {0.3, 0.1}, {0.2});
  const auto samp = Profile1D::sampled(kGrid, exact.value);
  EXPECT_LT(max_diff(samp.derivative, exact.derivative), 1e-13);
  EXPECT_THROW(Profile1D::sampled(kGrid, Array(5, 1.0)), ShapeError);
}

TEST(Examples, ArchiveRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("amhd_example_" + std::to_string(std::random_device{}()));
  const auto e = example_killing_T3(kGrid, 0.05);
  write_example(dir, e);
  const FieldBundle back = read_archive(dir);
  EXPECT_EQ(back.get<MetricField>("g").components(), e.g.components());
  EXPECT_EQ(back.get<VectorField>("X").components(), e.x.components());
  EXPECT_EQ(back.get<KForm>("alpha").components(), e.alpha.components());
  EXPECT_EQ(back.get<KForm>("mu").degree(), 3);
  EXPECT_EQ(back.get<ScalarField>("p").values(), e.p.values());
  const auto manifest = read_json(dir / "bundle.json");
  EXPECT_EQ(manifest["name"], "example-6.5");
  EXPECT_EQ(manifest["roles"]["metric"], "g");
  EXPECT_DOUBLE_EQ(manifest["parameters"]["eps"].get<double>(), 0.05);
  std::filesystem::remove_all(dir);
}
