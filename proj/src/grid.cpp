#include "cylnls/grid.hpp"

#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/transforms_impl.hpp"

namespace cylnls {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// FFT layout frequency index: 0, 1, ..., N/2-1, -N/2, ..., -1.
int fft_freq(int i, int n) { return i < n / 2 ? i : i - n; }

}  // namespace

CylinderGrid::~CylinderGrid() = default;

double CylinderGrid::xi_max() const {
  return 2.0 * M_PI / L_y * (N_y / 2);
}

double CylinderGrid::k_max() const { return N_x / 2; }

GridPtr make_grid(int d, double L_y, int N_y, int N_x) {
  if (d != 1 && d != 2) {
    throw ConfigError("make_grid: d must be 1 or 2, got " + std::to_string(d));
  }
  if (!(L_y > 0.0)) {
    throw ConfigError("make_grid: L_y must be positive, got " +
                      std::to_string(L_y));
  }
  if (!is_power_of_two(N_y) || N_y < 8) {
    throw ConfigError("make_grid: N_y must be a power of two >= 8, got " +
                      std::to_string(N_y));
  }
  if (!is_power_of_two(N_x) || N_x < 8) {
    throw ConfigError("make_grid: N_x must be a power of two >= 8, got " +
                      std::to_string(N_x));
  }

  auto grid = std::shared_ptr<CylinderGrid>(new CylinderGrid());
  grid->d = d;
  grid->L_y = L_y;
  grid->N_y = N_y;
  grid->N_x = N_x;
  grid->dy = L_y / N_y;
  grid->dx = 2.0 * M_PI / N_x;

  grid->xi.resize(N_y);
  grid->y.resize(N_y);
  for (int i = 0; i < N_y; ++i) {
    grid->xi[i] = 2.0 * M_PI / L_y * fft_freq(i, N_y);
    grid->y[i] = -L_y / 2.0 + i * grid->dy;
  }
  grid->k.resize(N_x);
  grid->x.resize(N_x);
  for (int i = 0; i < N_x; ++i) {
    grid->k[i] = fft_freq(i, N_x);
    grid->x[i] = i * grid->dx;
  }

  const std::size_t ny_flat = d == 1 ? static_cast<std::size_t>(N_y)
                                     : static_cast<std::size_t>(N_y) * N_y;
  grid->y_sq.resize(ny_flat);
  grid->xi_sq.resize(ny_flat);
  if (d == 1) {
    for (int i = 0; i < N_y; ++i) {
      grid->y_sq[i] = grid->y[i] * grid->y[i];
      grid->xi_sq[i] = grid->xi[i] * grid->xi[i];
    }
  } else {
    for (int i1 = 0; i1 < N_y; ++i1) {
      for (int i2 = 0; i2 < N_y; ++i2) {
        const std::size_t f = static_cast<std::size_t>(i1) * N_y + i2;
        grid->y_sq[f] = grid->y[i1] * grid->y[i1] + grid->y[i2] * grid->y[i2];
        grid->xi_sq[f] =
            grid->xi[i1] * grid->xi[i1] + grid->xi[i2] * grid->xi[i2];
      }
    }
  }

  grid->engine_ = std::make_unique<TransformEngine>(*grid);
  return grid;
}

}  // namespace cylnls
