#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <vector>

namespace cylnls {

class TransformEngine;

/// Discretization of the cylinder [-L_y/2, L_y/2)^d x [0, 2pi).
///
/// The transverse box uses N_y points per axis with spacing dy = L_y/N_y;
/// the torus direction uses N_x points with spacing dx = 2pi/N_x. Wavenumber
/// lattices are stored in FFT layout order (0, 1, ..., N/2-1, -N/2, ..., -1)
/// scaled by 2pi/L per axis, so spectral multipliers index them directly.
class CylinderGrid {
 public:
  int d = 1;       // transverse dimension, 1 or 2
  double L_y = 0;  // transverse box side length
  int N_y = 0;     // points per transverse axis, power of two
  int N_x = 0;     // torus points, power of two
  double dy = 0;   // L_y / N_y
  double dx = 0;   // 2pi / N_x

  std::vector<double> xi;  // transverse wavenumbers, FFT order, one axis
  std::vector<double> k;   // torus wavenumbers, FFT order
  std::vector<double> y;   // transverse coordinates, one axis, [-L/2, L/2)
  std::vector<double> x;   // torus coordinates, [0, 2pi)

  std::vector<double> y_sq;   // |y|^2 per flattened transverse index
  std::vector<double> xi_sq;  // |xi|^2 per flattened transverse index, FFT order

  std::size_t y_count() const { return y_sq.size(); }  // N_y^d
  std::size_t size() const { return y_sq.size() * static_cast<std::size_t>(N_x); }

  double cell_measure() const { return std::pow(dy, d) * dx; }

  double xi_max() const;  // largest |xi| on one axis (Nyquist magnitude)
  double k_max() const;

  /// Smallest time at which the quadratic chirp exp(i|y|^2/4t) is resolvable:
  /// its peak local frequency L_y/(2t) must stay below the Nyquist pi*N_y/L_y.
  double chirp_min_time() const { return L_y * L_y / (2.0 * M_PI * N_y); }

  TransformEngine& engine() const { return *engine_; }

  CylinderGrid(const CylinderGrid&) = delete;
  CylinderGrid& operator=(const CylinderGrid&) = delete;
  ~CylinderGrid();

 private:
  friend std::shared_ptr<const CylinderGrid> make_grid(int, double, int, int);
  CylinderGrid() = default;
  std::unique_ptr<TransformEngine> engine_;
};

using GridPtr = std::shared_ptr<const CylinderGrid>;

/// Build the grid. N_y, N_x must be powers of two >= 8, L_y > 0.
GridPtr make_grid(int d, double L_y, int N_y, int N_x);

}  // namespace cylnls
