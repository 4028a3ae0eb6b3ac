#include "cylnls/field.hpp"

#include <algorithm>
#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/transforms.hpp"

namespace cylnls {

ComplexField::ComplexField(GridPtr g, SpaceTag t)
    : grid(std::move(g)), values(grid->size(), Complex(0.0, 0.0)), tag(t) {}

ComplexField::ComplexField(GridPtr g, std::vector<Complex> v, SpaceTag t)
    : grid(std::move(g)), values(std::move(v)), tag(t) {
  if (values.size() != grid->size()) {
    throw ConfigError("ComplexField: value array does not match grid");
  }
}

namespace {

void require_compatible(const ComplexField& a, const ComplexField& b) {
  if (a.grid.get() != b.grid.get() || a.tag != b.tag ||
      a.values.size() != b.values.size()) {
    throw ConfigError("field arithmetic requires matching grid and space tag");
  }
}

}  // namespace

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
  require_compatible(a, b);
  ComplexField out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

ComplexField operator-(const ComplexField& a, const ComplexField& b) {
  require_compatible(a, b);
  ComplexField out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

ComplexField operator*(Complex c, const ComplexField& a) {
  ComplexField out = a;
  for (Complex& v : out.values) v *= c;
  return out;
}

ComplexField operator*(double c, const ComplexField& a) {
  return Complex(c, 0.0) * a;
}

double max_abs(const ComplexField& u) {
  double m = 0.0;
  for (const Complex& v : u.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ComplexField& a, const ComplexField& b) {
  require_compatible(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

ComplexField gaussian_packet(GridPtr grid, double width, double center,
                             double amplitude, int torus_mode) {
  if (!(width > 0.0)) {
    throw ConfigError("gaussian_packet: width must be positive");
  }
  ComplexField out(grid, SpaceTag::Physical);
  const CylinderGrid& g = *grid;
  const std::size_t ny = g.y_count();
  for (std::size_t f = 0; f < ny; ++f) {
    double r2 = 0.0;
    if (g.d == 1) {
      const double dy = g.y[f] - center;
      r2 = dy * dy;
    } else {
      const std::size_t i1 = f / g.N_y;
      const std::size_t i2 = f % g.N_y;
      const double d1 = g.y[i1] - center;
      const double d2 = g.y[i2] - center;
      r2 = d1 * d1 + d2 * d2;
    }
    const double envelope = amplitude * std::exp(-r2 / (width * width));
    for (int ix = 0; ix < g.N_x; ++ix) {
      const Complex phase =
          torus_mode == 0
              ? Complex(1.0, 0.0)
              : std::polar(1.0, torus_mode * g.x[ix]);
      out.values[f * g.N_x + ix] = envelope * phase;
    }
  }
  return out;
}

ComplexField random_band_limited(GridPtr grid, double xi_band, double k_band,
                                 std::mt19937_64& rng,
                                 bool include_zero_mode) {
  ComplexField spec(grid, SpaceTag::Spectral);
  const CylinderGrid& g = *grid;
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t ny = g.y_count();
  double l2 = 0.0;
  for (std::size_t f = 0; f < ny; ++f) {
    const bool zero_mode = g.xi_sq[f] == 0.0;
    const bool in_band = g.xi_sq[f] <= xi_band * xi_band;
    for (int ix = 0; ix < g.N_x; ++ix) {
      if (!in_band || std::abs(g.k[ix]) > k_band) continue;
      if (zero_mode && !include_zero_mode) continue;
      const Complex c(normal(rng), normal(rng));
      spec.values[f * g.N_x + ix] = c;
      l2 += std::norm(c);
    }
  }
  if (l2 == 0.0) {
    throw ConfigError("random_band_limited: empty band");
  }
  const double scale = 1.0 / std::sqrt(l2 * g.cell_measure());
  for (Complex& v : spec.values) v *= scale;
  return transform(spec, SpaceTag::Physical);
}

}  // namespace cylnls
