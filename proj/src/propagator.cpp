#include "cylnls/propagator.hpp"

#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/norms.hpp"
#include "cylnls/transforms.hpp"

namespace cylnls {

ComplexField propagate_free(const ComplexField& u0, double t) {
  if (u0.tag != SpaceTag::Physical) {
    throw ConfigError("propagate_free: field must be in physical space");
  }
  ComplexField out = u0;
  const CylinderGrid& g = *u0.grid;
  fft_y(g, out.values, true);
  fft_x(g, out.values, true);
  const std::size_t ny = g.y_count();
  for (std::size_t f = 0; f < ny; ++f) {
    for (int ix = 0; ix < g.N_x; ++ix) {
      const double phase = -t * (g.xi_sq[f] + g.k[ix] * g.k[ix]);
      out.values[f * g.N_x + ix] *= std::polar(1.0, phase);
    }
  }
  fft_x(g, out.values, false);
  fft_y(g, out.values, false);
  return out;
}

ComplexField propagate_torus(const ComplexField& u, double t,
                             TorusDirection direction) {
  if (u.tag != SpaceTag::Physical) {
    throw ConfigError("propagate_torus: field must be in physical space");
  }
  ComplexField out = u;
  const CylinderGrid& g = *u.grid;
  const double sign = direction == TorusDirection::Forward ? -1.0 : 1.0;
  fft_x(g, out.values, true);
  const std::size_t ny = g.y_count();
  for (std::size_t f = 0; f < ny; ++f) {
    for (int ix = 0; ix < g.N_x; ++ix) {
      const double k2 = g.k[ix] * g.k[ix];
      out.values[f * g.N_x + ix] *= std::polar(1.0, sign * t * k2);
    }
  }
  fft_x(g, out.values, false);
  return out;
}

double dispersive_ratio(const ComplexField& h, double t) {
  if (!(t > 0.0)) throw ConfigError("dispersive_ratio: t must be positive");
  const double denom = mixed_norm(h, 1.0, 1);
  if (denom < 1e-300) {
    throw DomainError("dispersive_ratio: degenerate h (zero L_y^1 H_x^1 norm)");
  }
  ComplexField evolved = propagate_free(h, t);
  if (boundary_shell_mass_fraction(evolved) > 1e-8) {
    throw DomainError(
        "dispersive_ratio: evolved field reaches the box boundary at t = " +
        std::to_string(t));
  }
  const double num = mixed_norm(evolved, kInfinity, 1);
  return std::pow(t, 0.5 * h.grid->d) * num / denom;
}

double lightcone_mass(const ComplexField& h, double t, double K) {
  if (!(t > 0.0) || !(K > 0.0)) {
    throw ConfigError("lightcone_mass: t and K must be positive");
  }
  const CylinderGrid& g = *h.grid;
  if (K * t >= g.L_y / 2.0) {
    throw DomainError("lightcone_mass: cone |y| <= K t exits the box (K t = " +
                      std::to_string(K * t) + ", L_y/2 = " +
                      std::to_string(g.L_y / 2.0) + ")");
  }
  ComplexField evolved = propagate_free(h, t);
  const double r2 = K * t * K * t;
  const std::size_t ny = g.y_count();
  double acc = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    if (g.y_sq[f] > r2) continue;
    for (int ix = 0; ix < g.N_x; ++ix) {
      acc += std::norm(evolved.values[f * g.N_x + ix]);
    }
  }
  return acc * g.cell_measure();
}

}  // namespace cylnls
