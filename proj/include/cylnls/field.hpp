#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "cylnls/grid.hpp"

namespace cylnls {

using Complex = std::complex<double>;

/// Representation space of a field's sample array.
enum class SpaceTag {
  Physical,   // u(y, x) on the grid points
  Spectral,   // full Fourier coefficients (xi, k)
  SpectralY,  // partial Fourier in y only: (xi, x)
};

/// Complex samples on a CylinderGrid, flattened row-major with the torus
/// index fastest: values[flat_y * N_x + ix]. Immutable by convention; all
/// operations return new fields.
struct ComplexField {
  GridPtr grid;
  std::vector<Complex> values;
  SpaceTag tag = SpaceTag::Physical;

  ComplexField() = default;
  ComplexField(GridPtr g, SpaceTag t);
  ComplexField(GridPtr g, std::vector<Complex> v, SpaceTag t);

  std::size_t size() const { return values.size(); }
};

ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(Complex c, const ComplexField& a);
ComplexField operator*(double c, const ComplexField& a);

double max_abs(const ComplexField& u);
double max_abs_diff(const ComplexField& a, const ComplexField& b);

/// amplitude * exp(-|y - center|^2 / width^2) * exp(i * torus_mode * x).
/// torus_mode = 0 gives the x-constant profile.
ComplexField gaussian_packet(GridPtr grid, double width, double center,
                             double amplitude, int torus_mode = 0);

/// Random field with spectrum supported on |xi| <= xi_band, |k| <= k_band,
/// unit L^2 norm. Zero xi-mode excluded unless include_zero_mode.
ComplexField random_band_limited(GridPtr grid, double xi_band, double k_band,
                                 std::mt19937_64& rng,
                                 bool include_zero_mode = true);

}  // namespace cylnls
