// Batch front-end. Exit codes: 0 success, 1 quantitative failure,
// 2 input or parameter error, 3 numerical degeneracy.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adaptmhd/adapted.hpp"
#include "adaptmhd/errors.hpp"
#include "adaptmhd/examples.hpp"
#include "adaptmhd/exterior.hpp"
#include "adaptmhd/field_io.hpp"
#include "adaptmhd/killing.hpp"
#include "adaptmhd/mhd.hpp"
#include "adaptmhd/parallel.hpp"
#include "adaptmhd/surfaces.hpp"

using namespace adaptmhd;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kDegenerate = 3 };

struct Options {
  std::string in;
  std::string out = ".";
  std::string example = "example-6.5";
  int grid = Grid3::kDefaultSize;
  double eps = 0.05;
  double tol_residual = kDefaultResidualTol;
  double tol_adapted = kDefaultAdaptedTol;
  std::optional<double> gap;
  double radius = 1.0;
  std::optional<double> slice;
  std::vector<double> center{0.0, 0.0, 0.0};
  double bump_radius = 1.0;
  double amplitude = 0.3;
};

struct Inputs {
  FieldBundle fields;
  MetricField g;
  VectorField x;
  ScalarField p;
  KForm alpha;
  VolumeForm mu;
};

Inputs load(const std::string& dir) {
  Inputs in;
  in.fields = read_archive(dir);
  in.g = in.fields.get<MetricField>("g");
  in.x = in.fields.get<VectorField>("X");
  in.p = in.fields.get<ScalarField>("p");
  const KForm* a = in.fields.find<KForm>("alpha");
  in.alpha = a ? *a : flat(in.g, in.x);
  const KForm* m = in.fields.find<KForm>("mu");
  if (m && m->degree() != 3) throw FormatError("entry 'mu' must be a 3-form");
  in.mu = m ? VolumeForm(in.g.grid(), (*m)[0], true) : volume_form(in.g);
  return in;
}

ExampleBundle build_example(const Options& o) {
  const Grid3 grid(o.grid);
  if (o.example == "example-6.4") return example_family_T3(grid);
  if (o.example == "example-6.5") return example_killing_T3(grid, o.eps);
  throw ParameterError("unknown example '" + o.example + "' (expected example-6.4 or example-6.5)");
}

void write_report(const fs::path& dir, const std::string& name, const ordered_json& j) {
  fs::create_directories(dir);
  write_json_atomic(dir / name, j);
}

double slice_curvature_norm(const MetricField& g, const ScalarField& p, double zeta0) {
  return max_norm(scalar_curvature_2d(extract_slice(g, p, zeta0)));
}

int cmd_build(const Options& o) {
  const ExampleBundle e = build_example(o);
  write_example(o.out, e);
  std::printf("wrote %s to %s\n", e.name.c_str(), o.out.c_str());
  return kOk;
}

int cmd_verify(const Options& o) {
  const Inputs in = load(o.in);
  const auto mhd = mhd_residual(in.g, in.x, in.p, o.tol_residual);
  const auto gf = validate_guided_flow(in.x, in.alpha, in.mu, in.p, o.tol_residual);
  const auto ad = is_adapted(in.g, in.x, in.alpha, in.mu, o.tol_adapted);
  ordered_json j;
  j["mhd"] = mhd.report().to_json();
  j["guided_flow"] = gf.validation().to_json();
  j["adapted"] = ad.report().to_json();
  const bool ok = mhd.verdict && gf.valid() && ad.verdict;
  j["verdict"] = ok;
  write_report(o.out, "verify.json", j);
  std::cout << j.dump(2) << "\n";
  return ok ? kOk : kFail;
}

int cmd_perturb(const Options& o) {
  const Inputs in = load(o.in);
  if (o.center.size() != 3) throw ParameterError("--center needs three values");
  const auto prof = bump_profile(in.g.grid(), {o.center[0], o.center[1], o.center[2]},
                                 o.bump_radius, o.amplitude);
  const MetricField gr = perturb_metric(in.g, in.x, in.p, prof, in.mu);
  const auto before = is_adapted(in.g, in.x, in.alpha, in.mu, o.tol_adapted);
  const auto after = is_adapted(gr, in.x, in.alpha, in.mu, o.tol_adapted);
  const auto mhd_after = mhd_residual(gr, in.x, in.p, o.tol_residual);
  FieldBundle out = in.fields;
  out.put("g", gr);
  out.put("rho", prof.rho);
  write_archive(o.out, out);

  ordered_json j;
  j["support"] = prof.support;
  j["min_rho"] = prof.min_rho;
  j["adapted_before"] = before.report().to_json();
  j["adapted_after"] = after.report().to_json();
  j["mhd_after"] = mhd_after.report().to_json();
  if (o.slice) {
    j["curvature"] = {{"zeta0", *o.slice},
                      {"max_scalar_curvature_before", slice_curvature_norm(in.g, in.p, *o.slice)},
                      {"max_scalar_curvature_after", slice_curvature_norm(gr, in.p, *o.slice)}};
  }
  const bool ok = after.verdict && mhd_after.verdict;
  j["verdict"] = ok;
  write_json_atomic(fs::path(o.out) / "perturb.json", j);
  std::cout << j.dump(2) << "\n";
  return ok ? kOk : kFail;
}

int cmd_certify(const Options& o) {
  const Inputs in = load(o.in);
  const auto gf = validate_guided_flow(in.x, in.alpha, in.mu, in.p, o.tol_residual);
  const Certificate c = certify_symmetry_breaking(in.g, gf, *o.slice, o.radius, o.gap);
  ordered_json j = c.report().to_json();
  j["peak"] = c.verdict.peak;
  j["status"] = c.certified ? "certified" : "not certified";
  write_report(o.out, "certificate.json", j);
  std::ostringstream csv;
  csv.precision(17);
  csv << "theta,phi,N\n";
  const Grid2& s = c.n.grid();
  for (int a = 0; a < s.n(0); ++a) {
    for (int b = 0; b < s.n(1); ++b) {
      csv << s.coord(0, a) << ',' << s.coord(1, b) << ',' << c.n[s.index(a, b)] << '\n';
    }
  }
  write_file_atomic(fs::path(o.out) / "n_functional.csv", csv.str());
  std::printf("%s (gap %.6e, min_gap %.3e)\n", c.certified ? "certified" : "not certified",
              c.verdict.gap, c.verdict.min_gap);
  return c.certified ? kOk : kFail;
}

struct Row {
  std::string name;
  double value;
  double tol;
  bool pass() const { return value <= tol; }
};

ScalarField map(const ScalarField& f, double (*op)(double)) {
  Array v = f.values();
  for (double& x : v) x = op(x);
  return ScalarField(f.grid(), std::move(v));
}

double rel_vec(const VectorField& a, const VectorField& b) {
  return max_norm(a - b) / std::max(max_norm(b), 1e-300);
}

std::vector<Row> rows_family(const Options& o) {
  const Grid3 grid(o.grid);
  const auto e = example_family_T3(grid);
  const auto gf = validate_guided_flow(e.x, e.alpha, e.mu, e.p, o.tol_residual);
  const VectorField& y = companion_field(gf);
  const auto mhd = mhd_residual(e.g, e.x, e.p, o.tol_residual);
  const VectorField gp = gradient(e.g, e.p);
  const VectorField yc = scale(map(inner(e.g, e.x, e.x), [](double v) { return 1.0 / v; }),
                               cross(e.g, e.x, gp, e.mu));
  std::vector<Row> rows{
      {"momentum balance", mhd.momentum_norm, o.tol_residual},
      {"divergence", mhd.div_norm, o.tol_residual},
      {"guided flow", gf.valid() ? 0.0 : 1.0, 0.5},
      {"companion vs closed form", rel_vec(y, e.y_closed_form), 1e-10},
      {"companion vs X x grad p / |X|^2", rel_vec(y, yc), 1e-10},
      {"alpha(Y)", max_norm(pairing(e.alpha, y)), 1e-10},
  };
  const auto prof = bump_profile(grid, {0.2, 1.0, 2.0}, 0.9, 0.3);
  const MetricField gr = perturb_metric(e.g, e.x, e.p, prof, e.mu);
  const auto ad = is_adapted(gr, e.x, e.alpha, e.mu, o.tol_adapted);
  rows.push_back({"bump metric adaptedness", std::max(ad.alpha_residual, ad.volume_residual), o.tol_adapted});
  rows.push_back({"bump metric momentum", mhd_residual(gr, e.x, e.p, o.tol_residual).momentum_norm,
                  o.tol_residual});
  const auto s = extract_slice(e.g, e.p, 0.0);
  const auto ph = p_harmonic_check(s, e.g, e.x, e.p);
  rows.push_back({"P-harmonic", std::max(ph.closedness, ph.coclosedness), 1e-8});
  return rows;
}

std::vector<Row> rows_killing(const Options& o) {
  const Grid3 grid(o.grid);
  std::vector<Row> rows;
  for (double eps : {-0.05, 0.0, 0.05}) {
    const auto e = example_killing_T3(grid, eps);
    const auto ad = is_adapted(e.g, e.x, e.alpha, e.mu, 1e-12);
    const ScalarField root(grid, volume_form(e.g).density());
    const double det = max_norm(map(root, [](double v) { return v * v - 1.0; }));
    char label[64];
    std::snprintf(label, sizeof label, "eps %+.2f", eps);
    rows.push_back({std::string(label) + " i_X g = alpha", ad.alpha_residual, 1e-12});
    rows.push_back({std::string(label) + " det g = 1", det, 1e-12});
    rows.push_back({std::string(label) + " momentum balance",
                    mhd_residual(e.g, e.x, e.p, o.tol_residual).momentum_norm, o.tol_residual});
  }
  const auto e = example_killing_T3(grid, o.eps);
  const auto gf = validate_guided_flow(e.x, e.alpha, e.mu, e.p, o.tol_residual);
  const VectorField& y = companion_field(gf);
  const auto ref = reference_values(e);
  rows.push_back({"companion vs b'(iota d_theta - d_phi)", rel_vec(y, e.y_closed_form), 1e-10});
  rows.push_back({"companion vs half-amplitude b'/2 (iota d_theta - d_phi)",
                  rel_vec(y, 0.5 * e.y_closed_form), 1e-10});
  const auto& nsq = std::get<ScalarField>(ref.at("y_norm_sq"));
  rows.push_back({"|Y|^2 closed form", max_norm(inner(e.g, y, y) - nsq), 1e-10});
  const VectorField dz = VectorField::coordinate(grid, 0);
  const auto sym = symmetry_report(e.g, e.x, e.p, dz);
  rows.push_back({"d_zeta Killing", sym.killing_residual, 1e-12});
  rows.push_back({"[d_zeta, X] closed form",
                  max_norm(commutator(dz, e.x) - std::get<VectorField>(ref.at("bracket_dzeta_x"))),
                  1e-10});
  rows.push_back({"d_zeta p closed form",
                  max_norm(directional_derivative(dz, e.p) - std::get<ScalarField>(ref.at("dzeta_p"))),
                  1e-10});
  const auto cert = certify_symmetry_breaking(e.g, gf, 0.0, o.radius, o.gap);
  rows.push_back({"symmetry breaking certified", cert.certified ? 0.0 : 1.0, 0.5});
  const auto e0 = example_killing_T3(grid, 0.0);
  const auto c0 = certify_symmetry_breaking(
      e0.g, validate_guided_flow(e0.x, e0.alpha, e0.mu, e0.p, o.tol_residual), 0.0, o.radius, o.gap);
  rows.push_back({"eps = 0 not certified", c0.certified ? 1.0 : 0.0, 0.5});
  const auto s = extract_slice(e.g, e.p, 0.0);
  const auto ph = p_harmonic_check(s, e.g, e.x, e.p);
  rows.push_back({"P-harmonic", std::max(ph.closedness, ph.coclosedness), 1e-8});
  return rows;
}

int cmd_reproduce(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Row> rows;
  if (o.example == "example-6.4") {
    rows = rows_family(o);
  } else if (o.example == "example-6.5") {
    rows = rows_killing(o);
  } else {
    throw ParameterError("unknown example '" + o.example + "' (expected example-6.4 or example-6.5)");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = true;
  ordered_json j;
  j["example"] = o.example;
  j["grid"] = o.grid;
  for (const auto& r : rows) {
    std::printf("%-4s %-52s %.3e (tol %.1e)\n", r.pass() ? "pass" : "FAIL", r.name.c_str(), r.value,
                r.tol);
    j["rows"].push_back({{"name", r.name}, {"value", r.value}, {"tolerance", r.tol}, {"pass", r.pass()}});
    ok = ok && r.pass();
  }
  j["seconds"] = secs;
  j["verdict"] = ok;
  write_report(o.out, "reproduce-" + o.example + ".json", j);
  std::printf("%s in %.2f s\n", ok ? "all rows pass" : "some rows fail", secs);
  return ok ? kOk : kFail;
}

void add_tolerances(CLI::App* c, Options& o) {
  c->add_option("--tol-residual", o.tol_residual, "relative residual tolerance")
      ->check(CLI::PositiveNumber);
  c->add_option("--tol-adapted", o.tol_adapted, "adaptedness tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adapted-metric MHD equilibria: build, verify, perturb, certify"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "write an example bundle archive");
  build->add_option("example", o.example, "example-6.4 or example-6.5");
  build->add_option("--eps", o.eps, "metric perturbation size");
  build->add_option("--grid", o.grid, "nodes per axis")->check(CLI::PositiveNumber);
  build->add_option("--out", o.out, "output directory")->required();

  auto* verify = app.add_subcommand("verify", "residuals of an archive");
  verify->add_option("--in", o.in, "input archive")->required()->check(CLI::ExistingDirectory);
  verify->add_option("--out", o.out, "report directory");
  add_tolerances(verify, o);

  auto* perturb = app.add_subcommand("perturb", "adapted bump perturbation of the metric");
  perturb->add_option("--in", o.in, "input archive")->required()->check(CLI::ExistingDirectory);
  perturb->add_option("--out", o.out, "output archive")->required();
  perturb->add_option("--center", o.center, "bump centre zeta theta phi")->expected(3);
  perturb->add_option("--bump-radius", o.bump_radius, "bump radius");
  perturb->add_option("--amplitude", o.amplitude, "bump amplitude (> -1)");
  perturb->add_option("--slice", o.slice, "also report slice curvature at zeta0");
  add_tolerances(perturb, o);

  auto* certify = app.add_subcommand("certify", "symmetry-breaking certificate on a slice");
  certify->add_option("--in", o.in, "input archive")->required()->check(CLI::ExistingDirectory);
  certify->add_option("--out", o.out, "report directory");
  certify->add_option("--slice", o.slice, "slice zeta0")->required();
  certify->add_option("--radius", o.radius, "excluded disk radius")->check(CLI::PositiveNumber);
  certify->add_option("--gap", o.gap, "minimum peak gap")->check(CLI::NonNegativeNumber);
  add_tolerances(certify, o);

  auto* reproduce = app.add_subcommand("reproduce", "closed-form checks for one example");
  reproduce->add_option("example", o.example, "example-6.4 or example-6.5")->required();
  reproduce->add_option("--grid", o.grid, "nodes per axis")->check(CLI::PositiveNumber);
  reproduce->add_option("--eps", o.eps, "metric perturbation size");
  reproduce->add_option("--out", o.out, "report directory");
  reproduce->add_option("--radius", o.radius, "excluded disk radius")->check(CLI::PositiveNumber);
  reproduce->add_option("--gap", o.gap, "minimum peak gap")->check(CLI::NonNegativeNumber);
  add_tolerances(reproduce, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }
  parallel::apply_thread_env();

  try {
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*perturb) return cmd_perturb(o);
    if (*certify) return cmd_certify(o);
    if (*reproduce) return cmd_reproduce(o);
  } catch (const FrameDegeneracyError& e) {
    std::fprintf(stderr, "degenerate frame: %s\n", e.what());
    return kDegenerate;
  } catch (const SingularPointError& e) {
    std::fprintf(stderr, "singular point: %s\n", e.what());
    return kDegenerate;
  } catch (const CriticalError& e) {
    std::fprintf(stderr, "critical slice: %s\n", e.what());
    return kDegenerate;
  } catch (const AllMaskedError& e) {
    std::fprintf(stderr, "degenerate field: %s\n", e.what());
    return kDegenerate;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInput;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "filesystem: %s\n", e.what());
    return kInput;
  }
  return kInput;
}
