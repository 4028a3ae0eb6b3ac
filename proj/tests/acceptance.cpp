// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cylnls/diagnostics.hpp"
#include "cylnls/experiment.hpp"
#include "cylnls/fractional.hpp"
#include "cylnls/norms.hpp"
#include "cylnls/propagator.hpp"
#include "cylnls/transforms.hpp"
#include "test_helpers.hpp"

using namespace cylnls;
using namespace cylnls::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void begin(const char* label) {
  std::printf("--- %s\n", label);
  std::fflush(stdout);
  g_t0 = std::chrono::steady_clock::now();
}

void report(const char* id, bool ok, const std::string& detail) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - g_t0)
          .count();
  std::printf("%s %s  %s  (%.1fs)\n", id, ok ? "PASS" : "FAIL", detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmtg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Criterion 1: transforms, Parseval, mixed-norm oracle.
void criterion_1() {
  begin("criterion 1: transform / norm suite");
  double worst_round = 0.0, worst_parseval = 0.0;
  for (GridPtr g : {make_grid(1, 400.0, 2048, 32), make_grid(1, 17.0, 8, 8),
                    make_grid(2, 25.0, 16, 16)}) {
    ComplexField f = random_field(g, 101);
    ComplexField back = transform(transform(f, SpaceTag::Spectral),
                                  SpaceTag::Physical);
    worst_round = std::max(worst_round, rel_l2_error(back, f));
    ComplexField spec = transform(f, SpaceTag::Spectral);
    double sp = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      sp += std::norm(f.values[i]);
      ss += std::norm(spec.values[i]);
    }
    worst_parseval = std::max(worst_parseval, std::abs(ss - sp) / sp);
  }

  GridPtr g = make_grid(1, 23.0, 32, 16);
  ComplexField u = random_field(g, 102);
  const double r = 8.0;
  double outer = 0.0;
  for (int iy = 0; iy < g->N_y; ++iy) {
    double inner = 0.0;
    for (int ix = 0; ix < g->N_x; ++ix) {
      inner += std::norm(u.values[iy * g->N_x + ix]) * g->dx;
    }
    outer += std::pow(inner, r / 2.0) * g->dy;
  }
  const double oracle = std::pow(outer, 1.0 / r);
  const double mixed_err =
      std::abs(mixed_norm(u, r, 0) - oracle) / oracle;

  const bool ok =
      worst_round <= 1e-12 && worst_parseval <= 1e-12 && mixed_err <= 1e-12;
  report("C1", ok,
         "roundtrip " + fmtg(worst_round) + ", parseval " +
             fmtg(worst_parseval) + ", mixed-norm oracle " + fmtg(mixed_err) +
             " (all <= 1e-12)");
}

// Criterion 2: free-flow suite.
void criterion_2() {
  begin("criterion 2: free flow suite");
  GridPtr g = make_grid(1, 1200.0, 4096, 32);
  ComplexField u = random_field(g, 103);

  ComplexField group_a = propagate_free(propagate_free(u, 2.7), 1.8);
  ComplexField group_b = propagate_free(u, 4.5);
  const double group_err = rel_l2_error(group_a, group_b);
  const double m0 = mass(u);
  const double unit_err =
      std::abs(mass(propagate_free(u, 5.0)) - m0) / m0;

  // Closed-form complex Gaussian: e^{itD} exp(-y^2).
  GridPtr gfine = make_grid(1, 400.0, 4096, 32);
  ComplexField g0 = gaussian_packet(gfine, 1.0, 0.0, 1.0);
  double gauss_err = 0.0;
  for (double t : {1.0, 5.0}) {
    ComplexField ut = propagate_free(g0, t);
    const Complex denom(1.0, 4.0 * t);
    const Complex pref = 1.0 / std::sqrt(denom);
    double err = 0.0, ref = 0.0;
    for (int iy = 0; iy < gfine->N_y; ++iy) {
      const double y = gfine->y[iy];
      const Complex exact = pref * std::exp(-y * y / denom);
      ref = std::max(ref, std::abs(exact));
      err = std::max(err, std::abs(ut.values[iy * gfine->N_x] - exact));
    }
    gauss_err = std::max(gauss_err, err / ref);
  }

  ComplexField h = gaussian_packet(g, std::sqrt(10.0), 0.0, 1.0);
  NormSeries series;
  series.name = "linf_h1";
  for (double t = 10.0; t < 100.0 - 1e-9; t *= std::sqrt(2.0)) {
    series.push(t, mixed_norm(propagate_free(h, t), kInfinity, 1));
  }
  series.push(100.0, mixed_norm(propagate_free(h, 100.0), kInfinity, 1));
  const PowerLawFit fit = fit_decay(series, 10.0, 100.0);

  const bool ok = group_err <= 1e-12 && unit_err <= 1e-12 &&
                  gauss_err <= 1e-8 && std::abs(fit.gamma_hat - 0.5) <= 0.03;
  report("C2", ok,
         "group " + fmtg(group_err) + ", unitarity " + fmtg(unit_err) +
             " (<= 1e-12), gaussian " + fmtg(gauss_err) +
             " (<= 1e-8), exponent " + fmtg(fit.gamma_hat) + " (0.5 +- 0.03)");
}

// Criterion 3: light-cone mass limit.
void criterion_3() {
  begin("criterion 3: light-cone mass limit");
  GridPtr g = make_grid(1, 1200.0, 4096, 32);
  ComplexField h = gaussian_packet(g, std::sqrt(10.0), 0.0, 1.0);
  const double K = 1.0;
  const double ball = spectral_ball_mass(h, K / 2.0);
  const double cone = lightcone_mass(h, 100.0, K);
  const double err = std::abs(cone - ball) / ball;
  report("C3", err <= 0.02,
         "cone vs frequency-ball " + fmtg(err) + " (<= 0.02)");
}

// Criterion 4: conservation suite (d=1, p=4, eps=0.05).
void criterion_4() {
  begin("criterion 4: conservation suite");
  GridPtr g = make_grid(1, 200.0, 1024, 16);
  ComplexField u0 = gaussian_packet(g, std::sqrt(10.0), 0.0, 0.05);
  const double p = 4.0;
  const double m0 = mass(u0);

  ComplexField u = u0;
  double drift = 0.0;
  const double dt = 2e-3;
  for (int i = 0; i < 10000; ++i) {
    u = step_strang(u, i * dt, dt, p);
    if (i % 500 == 499) {
      drift = std::max(drift, std::abs(mass(u) - m0) / m0);
    }
  }
  drift = std::max(drift, std::abs(mass(u) - m0) / m0);

  // Energy drift halving test on a moderate-amplitude run so the O(dt^2)
  // term sits well above roundoff.
  GridPtr g2 = make_grid(1, 50.0, 256, 16);
  ComplexField w0 = gaussian_packet(g2, 2.0, 0.0, 0.8);
  const double e0 = energy(w0, p);
  auto drift_at = [&](double step) {
    ComplexField w = w0;
    double t = 0.0;
    while (t < 2.0 - 1e-12) {
      w = step_strang(w, t, step, p);
      t += step;
    }
    return std::abs(energy(w, p) - e0) / std::abs(e0);
  };
  const double d1 = drift_at(0.04);
  const double d2 = drift_at(0.02);
  const double ratio = d1 / d2;

  const bool ok = drift <= 1e-10 && ratio >= 3.2 && ratio <= 4.8;
  report("C4", ok,
         "mass drift " + fmtg(drift) + " (<= 1e-10) over 1e4 steps, energy "
         "halving ratio " + fmtg(ratio) + " (4 +- 20%)");
}

// Criterion 5: fractional oracle.
void criterion_5() {
  begin("criterion 5: fractional oracle");
  GridPtr g = make_grid(1, 64.0, 512, 16);
  std::mt19937_64 rng(104);
  ComplexField u = random_band_limited(g, 5.0, 2.0, rng, false);
  const QuadratureScheme scheme = make_quadrature(200);
  double worst = 0.0;
  for (double s : {0.3, 0.385, 0.5, 1.0}) {
    ComplexField oracle = frac_laplacian_fourier(u, s, FracSign::Negative);
    ResolventPowerResult quad = frac_laplacian_resolvent(u, s, scheme);
    worst = std::max(worst, rel_l2_error(quad.field, oracle));
  }
  double worst_c = 0.0;
  for (double s = 0.2; s < 1.85; s += 0.2) {
    const double closed = M_PI / std::sin(M_PI * s / 2.0);
    worst_c = std::max(worst_c, std::abs(c_of_s(s) - closed) / closed);
  }
  const bool ok = worst <= 1e-4 && worst_c <= 1e-8;
  report("C5", ok,
         "resolvent vs fourier " + fmtg(worst) + " (<= 1e-4), c(s) " +
             fmtg(worst_c) + " (<= 1e-8)");
}

// Criterion 6: short-range scattering run.
void criterion_6() {
  begin("criterion 6: short-range scattering run (d=1, p=4, eps=0.05)");
  ExperimentSpec spec = default_spec(ExperimentName::SmallDataScatter);
  spec.out_dir = "acceptance_out/small_data_scatter";
  ExperimentReport rep = run_experiment(spec);
  std::string detail = "verdict " + to_string(rep.verdict);
  bool ok = rep.verdict != Verdict::FailedPrecondition;
  for (const CheckResult& c : rep.checks) {
    detail += "; " + c.name + " " + fmtg(c.value) + " (" + c.relation + " " +
              fmtg(c.threshold) + (c.passed ? " ok)" : " FAIL)");
    ok = ok && c.passed;
  }
  report("C6", ok, detail);
}

// Criterion 7: long-range run.
void criterion_7() {
  begin("criterion 7: long-range run (d=1, p=2, eps=0.3)");
  ExperimentSpec spec = default_spec(ExperimentName::LongRangeNonscatter);
  spec.out_dir = "acceptance_out/long_range_nonscatter";
  ExperimentReport rep = run_experiment(spec);
  std::string detail = "verdict " + to_string(rep.verdict);
  bool ok = rep.verdict != Verdict::FailedPrecondition;
  for (const CheckResult& c : rep.checks) {
    detail += "; " + c.name + " " + fmtg(c.value) + " (" + c.relation + " " +
              fmtg(c.threshold) + (c.passed ? " ok)" : " FAIL)");
    ok = ok && c.passed;
  }
  report("C7", ok, detail);
}

// Criterion 8: J-equation residual order under snapshot-spacing halving.
// The spacing must resolve the fastest retained transverse mode
// (delta * xi_max^2 small), so the run uses the wide short-range box.
void criterion_8() {
  begin("criterion 8: J-equation residual order");
  GridPtr g = make_grid(1, 800.0, 2048, 32);
  ComplexField u0 = gaussian_packet(g, 15.491933384829668, 0.0, 0.05);
  SimConfig cfg;
  cfg.p = 4.0;
  cfg.dt = 0.0025;
  cfg.t0 = 1.0;
  cfg.t_end = 60.02;
  cfg.snapshot_times = {59.98, 59.99, 60.0, 60.01, 60.02};
  cfg.amplitude = 0.05;
  Trajectory traj = evolve(u0, cfg);
  const double s = 0.385;
  const double r_half = j_equation_residual(traj, 60.0, s, 4.0, 0.02);
  const double r_quarter = j_equation_residual(traj, 60.0, s, 4.0, 0.01);
  const double ratio = r_half / r_quarter;
  const bool ok = ratio >= 4.0 / 1.3 && ratio <= 4.0 * 1.3 &&
                  traj.flags.empty();
  report("C8", ok,
         "residual(0.02)/residual(0.01) = " + fmtg(ratio) + " (4 +- 30%), "
         "residuals " + fmtg(r_half) + " / " + fmtg(r_quarter));
}

// Criterion 9: byte-identical CLI reruns.
void criterion_9(const std::string& cli) {
  begin("criterion 9: determinism of CLI runs");
  if (cli.empty()) {
    report("C9", false, "no CLI path given");
    return;
  }
  const fs::path work = "acceptance_out/determinism";
  fs::remove_all(work);
  fs::create_directories(work);
  const fs::path config = work / "frac.ini";
  {
    std::ofstream out(config);
    out << "[experiment]\nname = FRAC_ORACLE\nseed = 2718\nout_dir = "
        << (work / "run").string() << "\n";
  }
  auto run_once = [&]() {
    const std::string cmd = cli + " run " + config.string() + " > " +
                            (work / "cli.log").string() + " 2>&1";
    return std::system(cmd.c_str());
  };
  if (run_once() != 0) {
    report("C9", false, "first CLI run failed");
    return;
  }
  // Stash the first outputs, rerun into the same directory, then compare.
  const fs::path stash = work / "first";
  fs::create_directories(stash);
  for (const auto& e : fs::directory_iterator(work / "run")) {
    fs::copy_file(e.path(), stash / e.path().filename());
  }
  if (run_once() != 0) {
    report("C9", false, "second CLI run failed");
    return;
  }
  bool identical = true;
  int n = 0;
  for (const auto& e : fs::directory_iterator(work / "run")) {
    std::ifstream a(e.path(), std::ios::binary);
    std::ifstream b(stash / e.path().filename(), std::ios::binary);
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    identical = identical && sa.str() == sb.str();
    ++n;
  }
  report("C9", identical && n >= 4,
         "compared " + std::to_string(n) + " files byte-for-byte");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(cli);
  std::printf("%s: %d criterion(s) failed\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
