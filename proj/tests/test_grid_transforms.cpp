#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/grid.hpp"
#include "cylnls/transforms.hpp"
#include "test_helpers.hpp"

using namespace cylnls;
using namespace cylnls::testing;

TEST_CASE("make_grid fills spacings and lattices") {
  GridPtr g = make_grid(1, 16.0, 8, 8);
  CHECK(g->dy == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g->dx == doctest::Approx(M_PI / 4.0).epsilon(1e-15));

  // xi = (pi/8) * {-4..3} as a set.
  std::vector<double> xs = g->xi;
  std::sort(xs.begin(), xs.end());
  for (int i = 0; i < 8; ++i) {
    CHECK(xs[i] == doctest::Approx((i - 4) * M_PI / 8.0).epsilon(1e-14));
  }
  CHECK(g->dy * g->N_y == doctest::Approx(g->L_y).epsilon(1e-15));
  CHECK(g->dx * g->N_x == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
}

TEST_CASE("make_grid with L_y = 2pi gives the integer lattice") {
  GridPtr g = make_grid(1, 2.0 * M_PI, 8, 8);
  std::vector<double> xs = g->xi;
  std::sort(xs.begin(), xs.end());
  for (int i = 0; i < 8; ++i) {
    CHECK(xs[i] == doctest::Approx(static_cast<double>(i - 4)).epsilon(1e-14));
  }
}

TEST_CASE("make_grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(1, 16.0, 7, 8), ConfigError);
  CHECK_THROWS_AS(make_grid(1, 16.0, 8, 12), ConfigError);
  CHECK_THROWS_AS(make_grid(1, 16.0, 4, 8), ConfigError);
  CHECK_THROWS_AS(make_grid(1, -1.0, 8, 8), ConfigError);
  CHECK_THROWS_AS(make_grid(3, 16.0, 8, 8), ConfigError);
}

TEST_CASE("wavenumber lattices are symmetric except the Nyquist mode") {
  for (GridPtr g : {make_grid(1, 50.0, 16, 8), make_grid(2, 12.0, 8, 16)}) {
    std::vector<double> xs = g->xi;
    std::sort(xs.begin(), xs.end());
    // Every negative entry except the most negative has a positive partner.
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double v = xs[i];
      if (v >= 0.0) break;
      CHECK(std::count(xs.begin(), xs.end(), -v) == 1);
    }
    CHECK(xs.front() == doctest::Approx(-g->xi_max()));
  }
}

TEST_CASE("transform round trip is the identity") {
  for (GridPtr g : {make_grid(1, 20.0, 8, 8), make_grid(1, 13.0, 64, 16),
                    make_grid(2, 7.0, 16, 8)}) {
    ComplexField f = random_field(g, 11);
    for (SpaceTag mid : {SpaceTag::Spectral, SpaceTag::SpectralY}) {
      ComplexField back = transform(transform(f, mid), SpaceTag::Physical);
      double err = 0.0, ref = 0.0;
      for (std::size_t i = 0; i < f.values.size(); ++i) {
        err += std::norm(back.values[i] - f.values[i]);
        ref += std::norm(f.values[i]);
      }
      CHECK(std::sqrt(err / ref) < 1e-12);
    }
  }
}

TEST_CASE("plane wave concentrates on a single spectral coefficient") {
  GridPtr g = make_grid(1, 20.0, 32, 8);
  const int mode = 5;
  ComplexField f(g, SpaceTag::Physical);
  for (int iy = 0; iy < g->N_y; ++iy) {
    for (int ix = 0; ix < g->N_x; ++ix) {
      f.values[iy * g->N_x + ix] = std::polar(1.0, g->xi[mode] * g->y[iy]);
    }
  }
  ComplexField spec = transform(f, SpaceTag::SpectralY);
  double off_mode = 0.0, on_mode = 0.0;
  for (int iy = 0; iy < g->N_y; ++iy) {
    for (int ix = 0; ix < g->N_x; ++ix) {
      const double m = std::norm(spec.values[iy * g->N_x + ix]);
      if (iy == mode) {
        on_mode += m;
      } else {
        off_mode += m;
      }
    }
  }
  CHECK(on_mode > 0.0);
  CHECK(off_mode / on_mode < 1e-24);
}

TEST_CASE("discrete Parseval against the brute-force DFT") {
  // Direct O(N^2) summation of the unitary DFT on an 8x8 grid.
  GridPtr g = make_grid(1, 5.0, 8, 8);
  ComplexField f = random_field(g, 23);
  const int N = 8;
  std::vector<Complex> brute(N * N, Complex(0, 0));
  for (int qy = 0; qy < N; ++qy) {
    for (int qx = 0; qx < N; ++qx) {
      Complex acc(0, 0);
      for (int iy = 0; iy < N; ++iy) {
        for (int ix = 0; ix < N; ++ix) {
          const double phase =
              -2.0 * M_PI * (static_cast<double>(qy * iy) / N +
                             static_cast<double>(qx * ix) / N);
          acc += f.values[iy * N + ix] * std::polar(1.0, phase);
        }
      }
      brute[qy * N + qx] = acc / static_cast<double>(N);  // 1/sqrt(N*N)
    }
  }
  ComplexField spec = transform(f, SpaceTag::Spectral);
  double err = 0.0, ref = 0.0;
  double sum_phys = 0.0, sum_spec = 0.0;
  for (int i = 0; i < N * N; ++i) {
    err += std::norm(spec.values[i] - brute[i]);
    ref += std::norm(brute[i]);
    sum_phys += std::norm(f.values[i]);
    sum_spec += std::norm(spec.values[i]);
  }
  CHECK(std::sqrt(err / ref) < 1e-13);
  CHECK(std::abs(sum_spec - sum_phys) / sum_phys < 1e-12);
}

TEST_CASE("Parseval holds on every grid in the matrix") {
  for (GridPtr g : {make_grid(1, 20.0, 8, 8), make_grid(1, 400.0, 256, 16),
                    make_grid(2, 30.0, 16, 8)}) {
    ComplexField f = random_field(g, 7);
    ComplexField spec = transform(f, SpaceTag::Spectral);
    double sp = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      sp += std::norm(f.values[i]);
      ss += std::norm(spec.values[i]);
    }
    CHECK(std::abs(ss - sp) / sp < 1e-12);
  }
}

TEST_CASE("SpectralY to Spectral agrees with the direct full transform") {
  GridPtr g = make_grid(1, 9.0, 16, 16);
  ComplexField f = random_field(g, 31);
  ComplexField a = transform(transform(f, SpaceTag::SpectralY), SpaceTag::Spectral);
  ComplexField b = transform(f, SpaceTag::Spectral);
  CHECK(rel_l2_error(a, b) < 1e-13);
}
