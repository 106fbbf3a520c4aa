#include "adaptmhd/examples.hpp"

#include <cmath>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/spectral.hpp"

namespace adaptmhd {
namespace {

// Broadcasts a zeta profile over the grid.
Array along_zeta(const Grid3& g, const Array& prof, double scale = 1.0) {
  Array out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * prof[g.unravel(i)[0]];
  return out;
}

Array across_slice(const Grid3& g, const Array& prof) {
  Array out(g.size());
  const std::size_t m = static_cast<std::size_t>(g.n(1)) * g.n(2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = prof[i % m];
  return out;
}

}  // namespace

Profile1D Profile1D::sampled(const Grid3& grid, Array values, nlohmann::json label) {
  if (values.size() != static_cast<std::size_t>(grid.n(0))) {
    throw ShapeError("zeta profile needs one sample per zeta node");
  }
  Profile1D p;
  p.derivative = derivative_1d(values, grid.period(0));
  p.value = std::move(values);
  p.label = std::move(label);
  return p;
}

Profile1D Profile1D::from_function(const Grid3& grid, const std::function<double(double)>& f,
                                   const std::function<double(double)>& df,
                                   nlohmann::json label) {
  Profile1D p;
  p.label = std::move(label);
  for (int k = 0; k < grid.n(0); ++k) {
    p.value.push_back(f(grid.coord(0, k)));
    p.derivative.push_back(df(grid.coord(0, k)));
  }
  return p;
}

Profile1D Profile1D::trig(const Grid3& grid, double c0, const std::vector<double>& a,
                          const std::vector<double>& b) {
  const double w = kTwoPi / grid.period(0);
  auto f = [=](double z) {
    double s = c0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::cos((k + 1) * w * z);
    for (std::size_t k = 0; k < b.size(); ++k) s += b[k] * std::sin((k + 1) * w * z);
    return s;
  };
  auto df = [=](double z) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s -= (k + 1) * w * a[k] * std::sin((k + 1) * w * z);
    for (std::size_t k = 0; k < b.size(); ++k) s += (k + 1) * w * b[k] * std::cos((k + 1) * w * z);
    return s;
  };
  return from_function(grid, f, df, {{"trig", {{"c0", c0}, {"cos", a}, {"sin", b}}}});
}

Profile1D Profile1D::constant(const Grid3& grid, double c) { return trig(grid, c, {}, {}); }

Profile2D Profile2D::from_function(const Grid3& grid,
                                   const std::function<double(double, double)>& f,
                                   nlohmann::json label) {
  Profile2D p;
  p.label = std::move(label);
  for (int j = 0; j < grid.n(1); ++j) {
    for (int k = 0; k < grid.n(2); ++k) p.value.push_back(f(grid.coord(1, j), grid.coord(2, k)));
  }
  return p;
}

Profile2D Profile2D::half_cos_sum(const Grid3& grid) {
  return from_function(grid, [](double t, double p) { return 0.5 * (std::cos(t) + std::cos(p)); },
                       "half_cos_sum");
}

Profile2D Profile2D::cos_product(const Grid3& grid) {
  return from_function(grid, [](double t, double p) { return std::cos(t) * std::cos(p); },
                       "cos_product");
}

FieldBundle ExampleBundle::to_fields() const {
  FieldBundle out(grid);
  out.put("g", g);
  out.put("X", x);
  out.put("Y_closed_form", y_closed_form);
  out.put("alpha", alpha);
  out.put("mu", mu.as_form());
  out.put("p", p);
  return out;
}

nlohmann::json ExampleBundle::manifest() const {
  return {{"name", name},
          {"roles",
           {{"metric", "g"},
            {"field", "X"},
            {"companion_closed_form", "Y_closed_form"},
            {"alpha", "alpha"},
            {"volume", "mu"},
            {"pressure", "p"}}},
          {"parameters", parameters}};
}

ExampleBundle example_family_T3(const Grid3& grid, const Profile1D& a, const Profile1D& b) {
  if (a.value.size() != static_cast<std::size_t>(grid.n(0)) || b.value.size() != a.value.size()) {
    throw ShapeError("profiles do not match the zeta nodes");
  }
  ExampleBundle e;
  e.name = "example-6.4";
  e.kind = ExampleKind::kFlatFamily;
  e.grid = grid;
  e.a = a;
  e.b = b;
  const std::size_t nz = a.value.size();
  Array pz(nz), yt(nz), yp(nz);
  for (std::size_t k = 0; k < nz; ++k) {
    const double av = a.value[k], bv = b.value[k];
    const double s = av * av + bv * bv;
    const double dp = av * a.derivative[k] + bv * b.derivative[k];
    pz[k] = 0.5 * s;
    yt[k] = s > 0.0 ? dp / s * bv : 0.0;
    yp[k] = s > 0.0 ? -dp / s * av : 0.0;
  }
  e.g = MetricField::identity(grid);
  e.x = VectorField(grid, {Array(grid.size(), 0.0), along_zeta(grid, a.value),
                           along_zeta(grid, b.value)});
  e.alpha = KForm(grid, 1, {Array(grid.size(), 0.0), along_zeta(grid, a.value),
                            along_zeta(grid, b.value)});
  e.mu = VolumeForm::flat(grid);
  e.p = ScalarField(grid, along_zeta(grid, pz));
  e.y_closed_form = VectorField(grid, {Array(grid.size(), 0.0), along_zeta(grid, yt),
                                       along_zeta(grid, yp)});
  e.parameters = {{"a", a.label}, {"b", b.label}};
  return e;
}

ExampleBundle example_family_T3(const Grid3& grid) {
  return example_family_T3(grid, Profile1D::trig(grid, 2.0, {}, {1.0}),
                           Profile1D::trig(grid, 0.0, {1.0}, {}));
}

ExampleBundle example_killing_T3(const Grid3& grid, const Profile1D& b, double iota, double eps,
                                 const Profile2D& f) {
  if (iota == 0.0 || !std::isfinite(iota)) throw ParameterError("iota must be nonzero");
  if (b.value.size() != static_cast<std::size_t>(grid.n(0))) {
    throw ShapeError("b profile does not match the zeta nodes");
  }
  if (f.value.size() != static_cast<std::size_t>(grid.n(1)) * grid.n(2)) {
    throw ShapeError("f profile does not match the slice nodes");
  }
  for (double v : b.value) {
    if (!(v > 0.0)) throw ParameterError("b must be positive");
  }
  const double k = 1.0 / iota + iota;
  double worst = INFINITY;
  for (double fv : f.value) {
    worst = std::min({worst, 1.0 - eps * k * fv, 1.0 - iota * eps * fv});
  }
  if (!(worst > 0.0)) {
    throw ParameterError("eps too large: 1 - eps (1/iota + iota) f or g_theta_theta not positive "
                         "(min " + std::to_string(worst) + ")");
  }
  ExampleBundle e;
  e.name = "example-6.5";
  e.kind = ExampleKind::kKillingT3;
  e.grid = grid;
  e.b = b;
  e.f = f;
  e.iota = iota;
  e.eps = eps;
  const Array fb = across_slice(grid, f.value);
  const std::size_t n = grid.size();
  std::array<Array, 6> g{Array(n), Array(n, 0.0), Array(n, 0.0), Array(n), Array(n), Array(n)};
  for (std::size_t i = 0; i < n; ++i) {
    g[MetricField::kZZ][i] = 1.0 / (1.0 - eps * k * fb[i]);
    g[MetricField::kTT][i] = 1.0 - iota * eps * fb[i];
    g[MetricField::kTP][i] = eps * fb[i];
    g[MetricField::kPP][i] = 1.0 - eps * fb[i] / iota;
  }
  e.g = MetricField(grid, std::move(g));
  const Array bz = along_zeta(grid, b.value), db = along_zeta(grid, b.derivative);
  e.x = VectorField(grid, {Array(n, 0.0), bz, along_zeta(grid, b.value, iota)});
  e.alpha = KForm(grid, 1, {Array(n, 0.0), bz, along_zeta(grid, b.value, iota)});
  e.mu = VolumeForm::flat(grid);
  Array p(n), yt(n), yp(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = 0.5 * (1.0 + iota * iota) * bz[i] * bz[i];
    yt[i] = iota * db[i];
    yp[i] = -db[i];
  }
  e.p = ScalarField(grid, std::move(p));
  e.y_closed_form = VectorField(grid, {Array(n, 0.0), std::move(yt), std::move(yp)});
  e.parameters = {{"b", b.label}, {"iota", iota}, {"eps", eps}, {"f", f.label}};
  return e;
}

ExampleBundle example_killing_T3(const Grid3& grid, double eps) {
  return example_killing_T3(grid, Profile1D::trig(grid, 2.0, {}, {1.0}), 1.0, eps,
                            Profile2D::half_cos_sum(grid));
}

std::map<std::string, ReferenceValue> reference_values(const ExampleBundle& e) {
  if (e.kind != ExampleKind::kKillingT3) {
    throw KindError("reference values exist only for the Killing example, not '" + e.name + "'");
  }
  const Grid3& grid = e.grid;
  const std::size_t n = grid.size();
  const double k = 1.0 / e.iota + e.iota, s = 1.0 + e.iota * e.iota;
  const Array fb = across_slice(grid, e.f.value);
  const Array bz = along_zeta(grid, e.b.value), db = along_zeta(grid, e.b.derivative);
  Array nsq(n), dzp(n);
  for (std::size_t i = 0; i < n; ++i) {
    nsq[i] = db[i] * db[i] * s * (1.0 - e.eps * k * fb[i]);
    dzp[i] = s * bz[i] * db[i];
  }
  std::map<std::string, ReferenceValue> out;
  out.emplace("y_norm_sq", ScalarField(grid, std::move(nsq)));
  out.emplace("dzeta_p", ScalarField(grid, std::move(dzp)));
  out.emplace("bracket_dzeta_x",
              VectorField(grid, {Array(n, 0.0), db, along_zeta(grid, e.b.derivative, e.iota)}));
  out.emplace("y", e.y_closed_form);
  return out;
}

void write_example(const std::filesystem::path& dir, const ExampleBundle& bundle) {
  write_archive(dir, bundle.to_fields());
  write_json_atomic(dir / "bundle.json", bundle.manifest());
}

}  // namespace adaptmhd
