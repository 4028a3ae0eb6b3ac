#include "cylnls/norms.hpp"

#include <algorithm>
#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/transforms.hpp"

namespace cylnls {

namespace {

void require_physical(const ComplexField& u, const char* who) {
  if (u.tag != SpaceTag::Physical) {
    throw ConfigError(std::string(who) + ": field must be in physical space");
  }
}

}  // namespace

double mass(const ComplexField& u) {
  require_physical(u, "mass");
  double sum = 0.0;
  for (const Complex& v : u.values) sum += std::norm(v);
  return sum * u.grid->cell_measure();
}

double energy(const ComplexField& u, double p) {
  require_physical(u, "energy");
  if (!(p > 1.0)) throw ConfigError("energy: p must be > 1");
  const CylinderGrid& g = *u.grid;
  const double w = g.cell_measure();

  ComplexField spec = transform(u, SpaceTag::Spectral);
  double kinetic = 0.0;
  const std::size_t ny = g.y_count();
  for (std::size_t f = 0; f < ny; ++f) {
    for (int ix = 0; ix < g.N_x; ++ix) {
      const double mult = g.xi_sq[f] + g.k[ix] * g.k[ix];
      kinetic += mult * std::norm(spec.values[f * g.N_x + ix]);
    }
  }

  double potential = 0.0;
  const double half_exp = (p + 1.0) / 2.0;
  for (const Complex& v : u.values) {
    potential += std::pow(std::norm(v), half_exp);
  }
  return (0.5 * kinetic + potential / (p + 1.0)) * w;
}

ConservedPair conserved(const ComplexField& u, double p) {
  return ConservedPair{mass(u), energy(u, p)};
}

double mixed_norm(const ComplexField& u, double r_y, int sobolev_x) {
  require_physical(u, "mixed_norm");
  if (!(r_y >= 1.0)) throw ConfigError("mixed_norm: r_y must be >= 1");
  if (sobolev_x != 0 && sobolev_x != 1) {
    throw ConfigError("mixed_norm: sobolev_x must be 0 or 1");
  }
  const CylinderGrid& g = *u.grid;

  std::vector<Complex> vals = u.values;
  fft_x(g, vals, true);

  const std::size_t ny = g.y_count();
  std::vector<double> inner(ny, 0.0);
  for (std::size_t f = 0; f < ny; ++f) {
    double acc = 0.0;
    for (int ix = 0; ix < g.N_x; ++ix) {
      const double wk = sobolev_x ? 1.0 + g.k[ix] * g.k[ix] : 1.0;
      acc += wk * std::norm(vals[f * g.N_x + ix]);
    }
    inner[f] = std::sqrt(acc * g.dx);
  }

  if (r_y == kInfinity) {
    return *std::max_element(inner.begin(), inner.end());
  }
  const double wy = std::pow(g.dy, g.d);
  double acc = 0.0;
  for (double v : inner) acc += std::pow(v, r_y) * wy;
  return std::pow(acc, 1.0 / r_y);
}

double sigma_norm(const ComplexField& u) {
  require_physical(u, "sigma_norm");
  const CylinderGrid& g = *u.grid;
  const double w = g.cell_measure();
  const std::size_t ny = g.y_count();

  // ||<y>^2 u||_2
  double t1 = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    const double wy = 1.0 + g.y_sq[f];  // <y>^2
    for (int ix = 0; ix < g.N_x; ++ix) {
      t1 += wy * wy * std::norm(u.values[f * g.N_x + ix]);
    }
  }
  t1 = std::sqrt(t1 * w);

  // ||<y> grad u||_2 with the full gradient, each derivative spectral.
  ComplexField spec = transform(u, SpaceTag::Spectral);
  std::vector<double> grad_sq(u.values.size(), 0.0);
  const int n_axes = g.d + 1;
  for (int axis = 0; axis < n_axes; ++axis) {
    std::vector<Complex> dv = spec.values;
    for (std::size_t f = 0; f < ny; ++f) {
      double freq;
      if (axis == g.d) {
        freq = 0.0;  // set per torus index below
      } else if (g.d == 1) {
        freq = g.xi[f];
      } else {
        freq = axis == 0 ? g.xi[f / g.N_y] : g.xi[f % g.N_y];
      }
      for (int ix = 0; ix < g.N_x; ++ix) {
        const double m = axis == g.d ? g.k[ix] : freq;
        dv[f * g.N_x + ix] *= Complex(0.0, m);
      }
    }
    fft_x(g, dv, false);
    fft_y(g, dv, false);
    for (std::size_t i = 0; i < dv.size(); ++i) grad_sq[i] += std::norm(dv[i]);
  }
  double t2 = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    const double wy = 1.0 + g.y_sq[f];
    for (int ix = 0; ix < g.N_x; ++ix) {
      t2 += wy * grad_sq[f * g.N_x + ix];
    }
  }
  t2 = std::sqrt(t2 * w);

  // ||u||_{H^2} via the multiplier (1 + |xi|^2 + k^2).
  double t3 = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    for (int ix = 0; ix < g.N_x; ++ix) {
      const double m = 1.0 + g.xi_sq[f] + g.k[ix] * g.k[ix];
      t3 += m * m * std::norm(spec.values[f * g.N_x + ix]);
    }
  }
  t3 = std::sqrt(t3 * w);

  return t1 + t2 + t3;
}

double h1_norm(const ComplexField& u) {
  ComplexField spec = u.tag == SpaceTag::Spectral
                          ? u
                          : transform(u, SpaceTag::Spectral);
  const CylinderGrid& g = *u.grid;
  const std::size_t ny = g.y_count();
  double acc = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    for (int ix = 0; ix < g.N_x; ++ix) {
      const double m = 1.0 + g.xi_sq[f] + g.k[ix] * g.k[ix];
      acc += m * std::norm(spec.values[f * g.N_x + ix]);
    }
  }
  return std::sqrt(acc * g.cell_measure());
}

double boundary_shell_mass_fraction(const ComplexField& u) {
  require_physical(u, "boundary_shell_mass_fraction");
  const CylinderGrid& g = *u.grid;
  const double edge = 0.45 * g.L_y;
  const std::size_t ny = g.y_count();
  double shell = 0.0;
  double total = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    bool outer;
    if (g.d == 1) {
      outer = std::abs(g.y[f]) >= edge;
    } else {
      outer = std::abs(g.y[f / g.N_y]) >= edge ||
              std::abs(g.y[f % g.N_y]) >= edge;
    }
    for (int ix = 0; ix < g.N_x; ++ix) {
      const double m = std::norm(u.values[f * g.N_x + ix]);
      total += m;
      if (outer) shell += m;
    }
  }
  return total > 0.0 ? shell / total : 0.0;
}

double spectral_tail_fraction(const ComplexField& u) {
  ComplexField spec = transform(u, SpaceTag::Spectral);
  const CylinderGrid& g = *u.grid;
  const double xi_edge = 0.9 * g.xi_max();
  const double k_edge = 0.9 * g.k_max();
  const std::size_t ny = g.y_count();
  double tail_y = 0.0;
  double tail_x = 0.0;
  double total = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    bool y_tail;
    if (g.d == 1) {
      y_tail = std::abs(g.xi[f]) >= xi_edge;
    } else {
      y_tail = std::abs(g.xi[f / g.N_y]) >= xi_edge ||
               std::abs(g.xi[f % g.N_y]) >= xi_edge;
    }
    for (int ix = 0; ix < g.N_x; ++ix) {
      const double m = std::norm(spec.values[f * g.N_x + ix]);
      total += m;
      if (y_tail) tail_y += m;
      if (std::abs(g.k[ix]) >= k_edge) tail_x += m;
    }
  }
  if (total == 0.0) return 0.0;
  return std::max(tail_y, tail_x) / total;
}

double spectral_ball_mass(const ComplexField& u, double radius) {
  ComplexField spec_y = transform(u, SpaceTag::SpectralY);
  const CylinderGrid& g = *u.grid;
  const double r2 = radius * radius;
  const std::size_t ny = g.y_count();
  double acc = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    if (g.xi_sq[f] > r2) continue;
    for (int ix = 0; ix < g.N_x; ++ix) {
      acc += std::norm(spec_y.values[f * g.N_x + ix]);
    }
  }
  return acc * g.cell_measure();
}

}  // namespace cylnls
