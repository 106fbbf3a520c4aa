#include "adaptmhd/mhd.hpp"

#include <algorithm>
#include <cmath>

#include "adaptmhd/errors.hpp"
#include "adaptmhd/exterior.hpp"
#include "adaptmhd/parallel.hpp"
#include "adaptmhd/spectral.hpp"

namespace adaptmhd {
namespace {

double oscillation(const ScalarField& f) {
  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  return *hi - *lo;
}

double max_value(const ScalarField& f) {
  return *std::max_element(f.values().begin(), f.values().end());
}

}  // namespace

Report EquilibriumReport::report() const {
  return {"mhd", {{"momentum", momentum_norm}, {"divergence", div_norm}}, tolerance, verdict};
}

EquilibriumReport mhd_residual(const MetricField& g, const VectorField& x,
                               const ScalarField& p, double tol) {
  const VolumeForm mu = volume_form(g);
  EquilibriumReport r;
  r.tolerance = tol;
  r.momentum_residual = cross(g, curl(g, x, mu), x, mu) + gradient(g, p);
  r.div_residual = divergence(mu, x);
  const double energy = max_value(inner(g, x, x));
  r.momentum_norm = relative(max_norm(r.momentum_residual), energy > 0.0 ? energy : 1.0);
  r.div_norm = relative(max_norm(r.div_residual), max_norm(x));
  r.verdict = r.momentum_norm <= tol && r.div_norm <= tol;
  return r;
}

ScalarField bernoulli_convert(const MetricField& g, const VectorField& x,
                              const ScalarField& bernoulli) {
  const ScalarField e = inner(g, x, x);
  Array out(e.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -(0.5 * e[i] + bernoulli[i]);
  return ScalarField(g.grid(), std::move(out));
}

ScalarField bernoulli_from_pressure(const MetricField& g, const VectorField& x,
                                    const ScalarField& p) {
  const ScalarField e = inner(g, x, x);
  Array out(e.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -(p[i] + 0.5 * e[i]);
  return ScalarField(g.grid(), std::move(out));
}

BeltramiResult beltrami_factor(const MetricField& g, const VectorField& x,
                               const VolumeForm& mu, double mask_tol) {
  const Grid3& grid = g.grid();
  const std::size_t n = grid.size();
  const VectorField w = curl(g, x, mu);
  const ScalarField num = inner(g, w, x);
  const ScalarField den = inner(g, x, x);
  double xmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) xmax = std::max(xmax, std::sqrt(den[i]));
  const double cut = mask_tol * xmax;

  BeltramiResult r;
  r.mask.assign(n, 0);
  Array lambda(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::sqrt(den[i]) > cut)) {
      r.mask[i] = 1;
      ++r.masked;
    } else {
      lambda[i] = num[i] / den[i];
    }
  }
  if (r.masked == n) throw AllMaskedError("X vanishes at every node");

  // X(N/D) = (X(N) D - N X(D)) / D^2 keeps masked nodes out of the derivative.
  const ScalarField xn = directional_derivative(x, num);
  const ScalarField xd = directional_derivative(x, den);
  double diff = 0.0, wmax = 0.0, drift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (r.mask[i]) continue;
    const auto wi = w.at(i), xi = x.at(i);
    double s = 0.0, t = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double e = wi[c] - lambda[i] * xi[c];
      s += e * e;
      t += wi[c] * wi[c];
    }
    diff = std::max(diff, std::sqrt(s));
    wmax = std::max(wmax, std::sqrt(t));
    drift = std::max(drift, std::abs((xn[i] * den[i] - num[i] * xd[i]) / (den[i] * den[i])));
  }
  r.lambda = ScalarField(grid, std::move(lambda));
  r.colinearity_residual = relative(diff, wmax);
  r.first_integral_residual = drift;
  return r;
}

GuidedFlow::GuidedFlow(VectorField x, KForm alpha, VolumeForm mu, ScalarField p,
                       Report validation, double min_alpha_x)
    : x_(std::move(x)),
      alpha_(std::move(alpha)),
      mu_(std::move(mu)),
      p_(std::move(p)),
      validation_(std::move(validation)),
      min_alpha_x_(min_alpha_x),
      cache_(std::make_shared<Cache>()) {}

const VectorField& GuidedFlow::companion() const {
  std::call_once(cache_->once, [this] {
    cache_->y = local_companion(x_, alpha_, mu_, p_);
    cache_->ready.store(true);
  });
  return cache_->y;
}

bool GuidedFlow::has_companion() const { return cache_->ready.load(); }

GuidedFlow validate_guided_flow(const VectorField& x, const KForm& alpha,
                                const VolumeForm& mu, const ScalarField& p, double tol) {
  if (alpha.degree() != 1) throw DegreeError("alpha must be a 1-form");
  const ScalarField ax = pairing(alpha, x);
  const double amin = *std::min_element(ax.values().begin(), ax.values().end());
  if (!(amin > 0.0)) {
    throw PositivityError("alpha(X) must be positive, min is " + std::to_string(amin), amin);
  }
  const KForm dp = exterior_derivative(KForm::from_scalar(p));
  const double xs = max_norm(x), ps = oscillation(p);
  const double mus = max_abs(mu.density()), as = max_norm(alpha);
  const double flux = relative(
      max_norm(exterior_derivative(interior_product(x, mu.as_form()))), xs * mus);
  const double level = relative(max_norm(pairing(dp, x)), xs * ps);
  const double closed = relative(
      max_norm(wedge(exterior_derivative(alpha), dp)), as * ps);
  Report rep{"guided_flow",
             {{"min_alpha_x", amin},
              {"div_i_x_mu", flux},
              {"dp_x", level},
              {"dalpha_wedge_dp", closed}},
             tol,
             flux <= tol && level <= tol && closed <= tol};
  return GuidedFlow(x, alpha, mu, p, std::move(rep), amin);
}

const VectorField& companion_field(const GuidedFlow& gf) {
  if (!gf.valid()) throw ParameterError("companion field needs a valid guided flow");
  return gf.companion();
}

VectorField local_companion(const VectorField& x, const KForm& alpha, const VolumeForm& mu,
                            const ScalarField& p) {
  const ScalarField ax = pairing(alpha, x);
  const KForm beta = wedge(alpha, exterior_derivative(KForm::from_scalar(p)));
  std::vector<Array> c(3, Array(ax.size()));
  for (int q = 0; q < 3; ++q) {
    for (std::size_t i = 0; i < ax.size(); ++i) c[q][i] = beta[q][i] / ax[i];
  }
  return invert_volume_contraction(mu, KForm(x.grid(), 2, std::move(c)));
}

VectorField commutator(const VectorField& x, const VectorField& y) {
  const Grid3& g = x.grid();
  const std::size_t n = g.size();
  std::array<Array, 3> out{Array(n, 0.0), Array(n, 0.0), Array(n, 0.0)};
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      const Array dy = partial_derivative(g, y[i], j);
      const Array dx = partial_derivative(g, x[i], j);
      parallel::for_each(n, [&](std::size_t k) {
        out[i][k] += x[j][k] * dy[k] - y[j][k] * dx[k];
      });
    }
  }
  return VectorField(g, std::move(out));
}

QuasisymmetryResidual quasisymmetry_residual(const MetricField& g, const VectorField& x,
                                             const VolumeForm& mu, const VectorField& u) {
  const KForm alpha = flat(g, x);
  QuasisymmetryResidual r;
  r.speed = max_norm(directional_derivative(u, pairing(alpha, x)));
  r.flux = max_norm(lie_derivative(u, interior_product(x, mu.as_form())));
  r.alpha = max_norm(lie_derivative(u, alpha));
  return r;
}

}  // namespace adaptmhd
