#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/norms.hpp"
#include "cylnls/transforms.hpp"
#include "test_helpers.hpp"

using namespace cylnls;
using namespace cylnls::testing;

namespace {

ComplexField constant_field(GridPtr g, Complex c) {
  ComplexField f(g, SpaceTag::Physical);
  for (Complex& v : f.values) v = c;
  return f;
}

}  // namespace

TEST_CASE("mass of a constant and of zero") {
  GridPtr g = make_grid(1, 16.0, 32, 8);
  const Complex c(0.8, -0.4);
  CHECK(mass(constant_field(g, c)) ==
        doctest::Approx(std::norm(c) * 16.0 * 2.0 * M_PI).epsilon(1e-13));
  CHECK(mass(ComplexField(g, SpaceTag::Physical)) == 0.0);
}

TEST_CASE("mass of the x-independent Gaussian against quadrature") {
  GridPtr g = make_grid(1, 48.0, 512, 8);
  ComplexField u = gaussian_packet(g, 1.0, 0.0, 1.0);  // exp(-y^2)
  const double oracle =
      2.0 * M_PI * quad_real_line([](double y) { return std::exp(-2.0 * y * y); });
  CHECK(std::abs(mass(u) - oracle) / oracle < 1e-10);
  // Closed form for reference: 2 pi sqrt(pi/2).
  CHECK(oracle == doctest::Approx(2.0 * M_PI * std::sqrt(M_PI / 2.0)).epsilon(1e-12));
}

TEST_CASE("energy of zero and of a plane wave") {
  GridPtr g = make_grid(1, 20.0, 64, 16);
  const double p = 3.0;
  CHECK(energy(ComplexField(g, SpaceTag::Physical), p) == 0.0);

  const double eps = 0.3;
  const int k0 = 2;
  ComplexField w(g, SpaceTag::Physical);
  for (int iy = 0; iy < g->N_y; ++iy) {
    for (int ix = 0; ix < g->N_x; ++ix) {
      w.values[iy * g->N_x + ix] = eps * std::polar(1.0, k0 * g->x[ix]);
    }
  }
  const double vol = 20.0 * 2.0 * M_PI;
  const double expected =
      0.5 * eps * eps * k0 * k0 * vol + std::pow(eps, p + 1.0) / (p + 1.0) * vol;
  CHECK(energy(w, p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("energy of a Gaussian packet matches a finer-grid evaluation") {
  const double p = 3.0;
  ComplexField coarse =
      gaussian_packet(make_grid(1, 40.0, 256, 8), 1.0, 0.0, 0.7);
  ComplexField fine =
      gaussian_packet(make_grid(1, 40.0, 2048, 8), 1.0, 0.0, 0.7);
  const double ec = energy(coarse, p);
  const double ef = energy(fine, p);
  CHECK(std::abs(ec - ef) / std::abs(ef) < 1e-8);
}

TEST_CASE("mixed_norm closed forms") {
  GridPtr g = make_grid(1, 16.0, 32, 16);
  const Complex c(0.3, 0.6);
  CHECK(mixed_norm(constant_field(g, c), 2.0, 0) ==
        doctest::Approx(std::abs(c) * std::sqrt(2.0 * M_PI) * std::sqrt(16.0))
            .epsilon(1e-13));

  // f(y) exp(ix) with the H_x^1 weight sqrt(1 + 1).
  ComplexField w(g, SpaceTag::Physical);
  std::vector<double> f(g->N_y);
  for (int iy = 0; iy < g->N_y; ++iy) {
    f[iy] = std::exp(-0.2 * g->y[iy] * g->y[iy]);
    for (int ix = 0; ix < g->N_x; ++ix) {
      w.values[iy * g->N_x + ix] = f[iy] * std::polar(1.0, g->x[ix]);
    }
  }
  for (double r : {1.0, 2.0, 4.0}) {
    double fr = 0.0;
    for (int iy = 0; iy < g->N_y; ++iy) fr += std::pow(f[iy], r) * g->dy;
    fr = std::pow(fr, 1.0 / r);
    CHECK(mixed_norm(w, r, 1) ==
          doctest::Approx(std::sqrt(2.0) * std::sqrt(2.0 * M_PI) * fr)
              .epsilon(1e-12));
  }
}

TEST_CASE("mixed_norm against the nested-summation oracle") {
  GridPtr g = make_grid(1, 9.0, 16, 8);
  ComplexField u = random_field(g, 99);
  const double r = 4.0;  // 2p with p = 2

  double outer = 0.0;
  for (int iy = 0; iy < g->N_y; ++iy) {
    double inner = 0.0;
    for (int ix = 0; ix < g->N_x; ++ix) {
      inner += std::norm(u.values[iy * g->N_x + ix]) * g->dx;
    }
    outer += std::pow(std::sqrt(inner), r) * g->dy;
  }
  const double oracle = std::pow(outer, 1.0 / r);
  CHECK(std::abs(mixed_norm(u, r, 0) - oracle) / oracle < 1e-12);
}

TEST_CASE("mixed_norm properties") {
  GridPtr g = make_grid(2, 11.0, 8, 8);
  ComplexField u = random_field(g, 5);
  CHECK(mixed_norm(u, 2.0, 0) ==
        doctest::Approx(std::sqrt(mass(u))).epsilon(1e-13));
  // H_x^1 dominates L_x^2.
  CHECK(mixed_norm(u, 3.0, 1) >= mixed_norm(u, 3.0, 0));
  // Absolute homogeneity.
  const double c = 3.7;
  CHECK(mixed_norm(c * u, 2.5, 1) ==
        doctest::Approx(c * mixed_norm(u, 2.5, 1)).epsilon(1e-13));
  // r_y = infinity is the grid maximum of the inner norm.
  CHECK(mixed_norm(u, kInfinity, 0) <= mixed_norm(u, kInfinity, 1));
  CHECK_THROWS_AS(mixed_norm(u, 0.5, 0), ConfigError);
}

TEST_CASE("sigma_norm of zero and homogeneity") {
  GridPtr g = make_grid(1, 30.0, 64, 8);
  CHECK(sigma_norm(ComplexField(g, SpaceTag::Physical)) == 0.0);
  ComplexField u = gaussian_packet(g, 1.3, 0.5, 0.9, 1);
  CHECK(sigma_norm(2.0 * u) ==
        doctest::Approx(2.0 * sigma_norm(u)).epsilon(1e-13));
}

TEST_CASE("sigma_norm terms of exp(-y^2) against quadrature") {
  GridPtr g = make_grid(1, 48.0, 512, 8);
  ComplexField u = gaussian_packet(g, 1.0, 0.0, 1.0);

  const double two_pi = 2.0 * M_PI;
  // || <y>^2 u ||_2
  const double t1 = std::sqrt(two_pi * quad_real_line([](double y) {
    const double w = 1.0 + y * y;
    return w * w * std::exp(-2.0 * y * y);
  }));
  // || <y> grad u ||_2, grad = d/dy only for x-independent data
  const double t2 = std::sqrt(two_pi * quad_real_line([](double y) {
    return (1.0 + y * y) * 4.0 * y * y * std::exp(-2.0 * y * y);
  }));
  // || u ||_{H^2} via the unitary transform of exp(-y^2): e^{-xi^2/4}/sqrt(2)
  const double t3 = std::sqrt(two_pi * quad_real_line([](double xi) {
    const double m = 1.0 + xi * xi;
    return m * m * 0.5 * std::exp(-xi * xi / 2.0);
  }));

  const double total = sigma_norm(u);
  CHECK(std::abs(total - (t1 + t2 + t3)) / (t1 + t2 + t3) < 1e-8);
}

TEST_CASE("monitors see boundary and tail mass") {
  GridPtr g = make_grid(1, 20.0, 32, 8);
  // Wide Gaussian: visible boundary mass. Narrow spectral margin: tail mass.
  ComplexField wide = gaussian_packet(g, 6.0, 0.0, 1.0);
  CHECK(boundary_shell_mass_fraction(wide) > 1e-8);
  ComplexField narrow = gaussian_packet(g, 0.4, 0.0, 1.0);
  CHECK(spectral_tail_fraction(narrow) > 1e-8);

  GridPtr fine = make_grid(1, 60.0, 512, 8);
  ComplexField safe = gaussian_packet(fine, 1.5, 0.0, 1.0);
  CHECK(boundary_shell_mass_fraction(safe) < 1e-12);
  CHECK(spectral_tail_fraction(safe) < 1e-12);
}

TEST_CASE("spectral_ball_mass recovers the total mass for a huge radius") {
  GridPtr g = make_grid(1, 25.0, 64, 8);
  ComplexField u = random_field(g, 12);
  CHECK(spectral_ball_mass(u, 1e9) == doctest::Approx(mass(u)).epsilon(1e-12));
  CHECK(spectral_ball_mass(u, 0.5) <= spectral_ball_mass(u, 1.0));
}
