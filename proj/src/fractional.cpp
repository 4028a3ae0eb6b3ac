#include "cylnls/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cylnls/errors.hpp"
#include "cylnls/norms.hpp"
#include "cylnls/transforms.hpp"

namespace cylnls {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1], Newton on the recurrence.
void legendre_rule(int n, std::vector<double>& nodes,
                   std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

// Append one log-mapped panel [a, b] (in u = log lambda) to the scheme.
void append_panel(double a, double b, int n, std::vector<double>& lambda,
                  std::vector<double>& weight) {
  std::vector<double> x, w;
  legendre_rule(n, x, w);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    const double u = mid + half * x[i];
    lambda.push_back(std::exp(u));
    weight.push_back(half * w[i] * std::exp(u));  // d(lambda) = e^u du
  }
}

void require_s_open(double s, const char* who) {
  if (!(s > 0.0) || !(s < 2.0)) {
    throw ConfigError(std::string(who) + ": s must lie in (0, 2), got " +
                      std::to_string(s));
  }
}

}  // namespace

QuadratureScheme make_quadrature(int n_nodes, double split_point, double u_min,
                                 double u_max) {
  if (n_nodes < 8) {
    throw ConfigError("make_quadrature: n_nodes must be >= 8");
  }
  if (!(split_point > 0.0)) {
    throw ConfigError("make_quadrature: split_point must be positive");
  }
  const double u_split = std::log(split_point);
  if (!(u_min < u_split) || !(u_split < u_max)) {
    throw ConfigError(
        "make_quadrature: need u_min < log(split_point) < u_max");
  }
  QuadratureScheme q;
  q.n_nodes = n_nodes;
  q.split_point = split_point;
  q.u_min = u_min;
  q.u_max = u_max;
  const int n_lo = n_nodes / 2;
  append_panel(u_min, u_split, n_lo, q.lambda, q.weight);
  append_panel(u_split, u_max, n_nodes - n_lo, q.lambda, q.weight);
  return q;
}

std::vector<std::string> QuadratureScheme::coverage_warnings(
    const CylinderGrid& grid) const {
  std::vector<std::string> out;
  const double xi_min = 2.0 * M_PI / grid.L_y;
  const double mu_min = xi_min * xi_min;
  const double mu_max = grid.d * grid.xi_max() * grid.xi_max();
  if (u_min > std::log(mu_min)) {
    out.push_back(
        "quadrature truncation: u_min above log of the smallest |xi|^2");
  }
  if (u_max < std::log(mu_max)) {
    out.push_back(
        "quadrature truncation: u_max below log of the largest |xi|^2");
  }
  return out;
}

ComplexField frac_laplacian_fourier(const ComplexField& u, double s,
                                    FracSign sign,
                                    double* removed_zero_mode_mass) {
  if (sign == FracSign::Positive) {
    if (!(s > 0.0) || !(s <= 2.0)) {
      throw ConfigError("frac_laplacian_fourier: s must lie in (0, 2]");
    }
  } else {
    require_s_open(s, "frac_laplacian_fourier");
  }
  ComplexField spec = transform(u, SpaceTag::SpectralY);
  const CylinderGrid& g = *u.grid;
  const std::size_t ny = g.y_count();

  double removed = 0.0;
  double total = 0.0;
  const double half_s = (sign == FracSign::Positive ? 0.5 : -0.5) * s;
  for (std::size_t f = 0; f < ny; ++f) {
    const bool zero_mode = g.xi_sq[f] == 0.0;
    const double mult = zero_mode ? 0.0 : std::pow(g.xi_sq[f], half_s);
    for (int ix = 0; ix < g.N_x; ++ix) {
      Complex& v = spec.values[f * g.N_x + ix];
      const double m = std::norm(v);
      total += m;
      if (zero_mode) {
        removed += m;
        v = Complex(0.0, 0.0);
      } else {
        v *= mult;
      }
    }
  }
  if (removed_zero_mode_mass != nullptr) {
    *removed_zero_mode_mass = total > 0.0 ? removed / total : 0.0;
  }
  return transform(spec, u.tag);
}

ComplexField resolvent_apply(const ComplexField& u, double lambda) {
  if (!(lambda > 0.0)) {
    throw ConfigError("resolvent_apply: lambda must be positive");
  }
  ComplexField spec = transform(u, SpaceTag::SpectralY);
  const CylinderGrid& g = *u.grid;
  const std::size_t ny = g.y_count();
  for (std::size_t f = 0; f < ny; ++f) {
    const double mult = 1.0 / (lambda + g.xi_sq[f]);
    for (int ix = 0; ix < g.N_x; ++ix) {
      spec.values[f * g.N_x + ix] *= mult;
    }
  }
  return transform(spec, u.tag);
}

ResolventPowerResult frac_laplacian_resolvent(const ComplexField& u, double s,
                                              const QuadratureScheme& q) {
  require_s_open(s, "frac_laplacian_resolvent");
  ResolventPowerResult result;
  result.warnings = q.coverage_warnings(*u.grid);
  if (c_of_s_accuracy_warning(s)) {
    result.warnings.push_back(
        "c(s) nearly divergent: s outside [0.05, 1.95]");
  }

  // Work on the y-spectrum: project the zero mode, then accumulate the
  // resolvent applied at each node.
  ComplexField spec = transform(u, SpaceTag::SpectralY);
  const CylinderGrid& g = *u.grid;
  const std::size_t ny = g.y_count();
  for (int ix = 0; ix < g.N_x; ++ix) {
    for (std::size_t f = 0; f < ny; ++f) {
      if (g.xi_sq[f] == 0.0) spec.values[f * g.N_x + ix] = Complex(0.0, 0.0);
    }
  }

  ComplexField acc(u.grid, SpaceTag::SpectralY);
  const double c_inv = 1.0 / c_of_s(s);
  for (std::size_t i = 0; i < q.lambda.size(); ++i) {
    const double lam = q.lambda[i];
    const double coeff = c_inv * q.weight[i] * std::pow(lam, -0.5 * s);
    ComplexField node = resolvent_apply(spec, lam);
    for (std::size_t j = 0; j < acc.values.size(); ++j) {
      acc.values[j] += coeff * node.values[j];
    }
  }
  result.field = transform(acc, u.tag);
  return result;
}

double c_of_s(double s) {
  require_s_open(s, "c_of_s");
  // Tail decay rates are s/2 (tau -> inf) and 1 - s/2 (tau -> 0); size the
  // log-variable panels so the discarded tails are ~e^{-45}.
  const double depth = 45.0;
  const double u_hi = 2.0 * depth / s;
  const double u_lo = -2.0 * depth / (2.0 - s);
  auto integrand = [s](double u) {
    // e^{u(1-s/2)} / (1 + e^u), evaluated in log space to survive large |u|.
    const double log_den = u > 30.0 ? u : std::log1p(std::exp(u));
    return std::exp(u * (1.0 - 0.5 * s) - log_den);
  };
  double total = 0.0;
  for (const auto& [a, b] : {std::pair{u_lo, 0.0}, std::pair{0.0, u_hi}}) {
    const double width = b - a;
    const int n = std::max(256, static_cast<int>(std::ceil(2.2 * width)));
    std::vector<double> x, w;
    legendre_rule(n, x, w);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * width;
    for (int i = 0; i < n; ++i) {
      total += half * w[i] * integrand(mid + half * x[i]);
    }
  }
  return total;
}

bool c_of_s_accuracy_warning(double s) { return s < 0.05 || s > 1.95; }

InterpolationWitness interpolation_witness(const ComplexField& u, double s,
                                           double p) {
  const CylinderGrid& g = *u.grid;
  const int d = g.d;
  if (!(p > 1.0)) throw ConfigError("interpolation_witness: p must be > 1");
  const double s_base = 0.5 * d * (1.0 - 1.0 / p);
  if (!(s > s_base) || !(s < 0.5 * d)) {
    throw ConfigError(
        "interpolation_witness: need (d/2)(1-1/p) < s < d/2 for the Hoelder "
        "bookkeeping");
  }
  if (u.tag != SpaceTag::Physical) {
    throw ConfigError("interpolation_witness: field must be physical");
  }
  // x-independent slice only.
  const std::size_t ny = g.y_count();
  const double scale = max_abs(u);
  for (std::size_t f = 0; f < ny; ++f) {
    for (int ix = 1; ix < g.N_x; ++ix) {
      if (std::abs(u.values[f * g.N_x + ix] - u.values[f * g.N_x]) >
          1e-12 * std::max(scale, 1.0)) {
        throw ConfigError("interpolation_witness: field must be x-independent");
      }
    }
  }

  InterpolationWitness wit;
  // Exponent bookkeeping behind the Hoelder split: gamma from the Sobolev
  // index, mu = 2 gamma, then eta interpolates 1/(2p) between 1/mu and 1/2.
  const double inv_gamma = 0.5 - s / d;
  wit.mu = 2.0 / inv_gamma;
  wit.eta = (0.5 / p - 1.0 / wit.mu) / (0.5 - 1.0 / wit.mu);

  const double wy = std::pow(g.dy, d);
  const double two_pi = 2.0 * M_PI;
  double lhs_acc = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    lhs_acc += std::pow(std::norm(u.values[f * g.N_x]), p) * wy;
  }
  wit.lhs = std::pow(lhs_acc, 0.5 / p);

  ComplexField frac = frac_laplacian_fourier(u, s, FracSign::Positive);
  wit.term_a = std::sqrt(mass(frac) / two_pi);
  const double l2_y = std::sqrt(mass(u) / two_pi);
  wit.term_b = std::pow(wit.term_a, 1.0 - wit.eta) * std::pow(l2_y, wit.eta);
  return wit;
}

}  // namespace cylnls
