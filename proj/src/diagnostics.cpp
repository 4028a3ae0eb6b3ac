#include "cylnls/diagnostics.hpp"

#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/fractional.hpp"
#include "cylnls/norms.hpp"
#include "cylnls/propagator.hpp"
#include "cylnls/transforms.hpp"

namespace cylnls {

PowerLawFit fit_decay(const NormSeries& series, double window_lo,
                      double window_hi) {
  std::vector<double> lt, lv;
  for (const auto& [t, v] : series.samples) {
    if (t < window_lo - 1e-12 || t > window_hi + 1e-12) continue;
    if (!(t > 0.0)) throw DomainError("fit_decay: nonpositive time in window");
    if (!(v > 0.0)) {
      throw DomainError("fit_decay: nonpositive value in window");
    }
    lt.push_back(std::log(t));
    lv.push_back(std::log(v));
  }
  if (lt.size() < 4) {
    throw DomainError("fit_decay: need at least 4 samples in the window");
  }
  const double n = static_cast<double>(lt.size());
  double mt = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    mt += lt[i];
    mv += lv[i];
  }
  mt /= n;
  mv /= n;
  double stt = 0.0, stv = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    stt += (lt[i] - mt) * (lt[i] - mt);
    stv += (lt[i] - mt) * (lv[i] - mv);
    svv += (lv[i] - mv) * (lv[i] - mv);
  }
  PowerLawFit fit;
  const double slope = stv / stt;
  fit.gamma_hat = -slope;
  fit.intercept = mv - slope * mt;
  fit.r2 = svv > 0.0 ? (stv * stv) / (stt * svv) : 1.0;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  return fit;
}

ComplexField j_operator(const ComplexField& u, double t, double s) {
  if (!(s > 0.0) || !(s < 2.0)) {
    throw ConfigError("j_operator: s must lie in (0, 2)");
  }
  const CylinderGrid& g = *u.grid;
  const double t_min = g.chirp_min_time();
  if (t < t_min) {
    throw DomainError(
        "CHIRP_UNRESOLVED: j_operator needs t >= " + std::to_string(t_min) +
        " on this grid, got t = " + std::to_string(t));
  }

  ComplexField w = propagate_torus(u, t, TorusDirection::Inverse);
  const std::size_t ny = g.y_count();
  // M(-t): chirp exp(-i |y|^2 / 4t).
  for (std::size_t f = 0; f < ny; ++f) {
    const Complex chirp = std::polar(1.0, -g.y_sq[f] / (4.0 * t));
    for (int ix = 0; ix < g.N_x; ++ix) w.values[f * g.N_x + ix] *= chirp;
  }
  w = frac_laplacian_fourier(w, s, FracSign::Positive);
  const double ts = std::pow(t, s);
  // M(t) together with the t^s scaling of (-t^2 Laplacian_y)^{s/2}.
  for (std::size_t f = 0; f < ny; ++f) {
    const Complex chirp = std::polar(ts, g.y_sq[f] / (4.0 * t));
    for (int ix = 0; ix < g.N_x; ++ix) w.values[f * g.N_x + ix] *= chirp;
  }
  return w;
}

ComplexField j_operator_conjugated(const ComplexField& u, double t, double s) {
  if (!(s > 0.0) || !(s < 2.0)) {
    throw ConfigError("j_operator_conjugated: s must lie in (0, 2)");
  }
  if (!(t > 0.0)) {
    throw ConfigError("j_operator_conjugated: t must be positive");
  }
  const CylinderGrid& g = *u.grid;
  ComplexField v = pullback(u, t);  // e^{-it Laplacian_{y,x}} u
  const double scale = std::pow(2.0, -s);
  const std::size_t ny = g.y_count();
  for (std::size_t f = 0; f < ny; ++f) {
    const double w = scale * std::pow(g.y_sq[f], 0.5 * s);
    for (int ix = 0; ix < g.N_x; ++ix) v.values[f * g.N_x + ix] *= w;
  }
  v = propagate_free(v, t);
  return propagate_torus(v, t, TorusDirection::Inverse);  // net e^{+it Lap_y}
}

namespace {

ComplexField nonlinearity(const ComplexField& u, double p) {
  ComplexField out = u;
  const double q = 0.5 * (p - 1.0);
  for (Complex& v : out.values) {
    const double a2 = std::norm(v);
    v *= a2 == 0.0 ? 0.0 : std::pow(a2, q);
  }
  return out;
}

double l2_norm(const ComplexField& u) {
  double acc = 0.0;
  for (const Complex& v : u.values) acc += std::norm(v);
  return std::sqrt(acc * u.grid->cell_measure());
}

}  // namespace

double j_equation_residual(const Trajectory& traj, double t, double s, double p,
                           double delta) {
  const std::size_t j = traj.index_of_time(t);
  if (delta == 0.0) {
    if (j == 0 || j + 1 >= traj.times.size()) {
      throw DomainError("j_equation_residual: t has no neighbors");
    }
    const double lo = traj.times[j] - traj.times[j - 1];
    const double hi = traj.times[j + 1] - traj.times[j];
    if (std::abs(lo - hi) > 1e-9) {
      throw DomainError(
          "j_equation_residual: snapshots around t are not equispaced");
    }
    delta = hi;
  }
  const std::size_t jm = traj.index_of_time(t - delta);
  const std::size_t jp = traj.index_of_time(t + delta);

  // The conjugated discretization of |J|^s keeps the strong-form residual at
  // O(delta^2) + O(dt^2); the chirp-sandwich route does not satisfy the
  // discrete evolution identity to that order.
  ComplexField ju_m = j_operator_conjugated(traj.snapshots[jm], t - delta, s);
  ComplexField ju_p = j_operator_conjugated(traj.snapshots[jp], t + delta, s);
  ComplexField ju = j_operator_conjugated(traj.snapshots[j], t, s);

  // i (J^s u)' by central difference.
  ComplexField dt_term =
      Complex(0.0, 1.0 / (2.0 * delta)) * (ju_p - ju_m);

  // Laplacian_y J^s u.
  ComplexField lap = transform(ju, SpaceTag::SpectralY);
  const CylinderGrid& g = *traj.snapshots[j].grid;
  const std::size_t ny = g.y_count();
  for (std::size_t f = 0; f < ny; ++f) {
    for (int ix = 0; ix < g.N_x; ++ix) {
      lap.values[f * g.N_x + ix] *= -g.xi_sq[f];
    }
  }
  lap = transform(lap, SpaceTag::Physical);

  // J^s applied to the nonlinearity (its internal torus factor included).
  ComplexField rhs =
      j_operator_conjugated(nonlinearity(traj.snapshots[j], p), t, s);

  ComplexField residual = (dt_term + lap) - rhs;
  const double denom = std::max(l2_norm(lap), l2_norm(rhs));
  if (denom == 0.0) return 0.0;
  return l2_norm(residual) / denom;
}

ComplexField pullback(const ComplexField& u, double t) {
  return propagate_free(u, -t);
}

ComplexField extract_scattering_state(const Trajectory& traj) {
  if (!traj.flags.empty()) {
    std::string names;
    for (TrajectoryFlag f : traj.flags) {
      names += f == TrajectoryFlag::OutOfDomain ? " OUT_OF_DOMAIN"
                                                : " UNDER_RESOLVED";
    }
    throw DomainError("extract_scattering_state: trajectory flagged:" + names);
  }
  if (traj.snapshots.empty()) {
    throw DomainError("extract_scattering_state: empty trajectory");
  }
  return pullback(traj.snapshots.back(), traj.times.back());
}

namespace {

double witness_pairing(const ComplexField& u, const ComplexField& free_wave,
                       double p) {
  // Re integral |u|^{p-1} u conj(e^{itD} h); equals Im integral i(...).
  double acc = 0.0;
  const double q = 0.5 * (p - 1.0);
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    const double a2 = std::norm(u.values[i]);
    const double amp = a2 == 0.0 ? 0.0 : std::pow(a2, q);
    acc += amp * (u.values[i] * std::conj(free_wave.values[i])).real();
  }
  return acc * u.grid->cell_measure();
}

std::vector<double> witness_values(const Trajectory& traj,
                                   const ComplexField& h, double p) {
  if (l2_norm(h) < 1e-300) {
    throw DomainError("witness_integral: degenerate witness h = 0");
  }
  std::vector<double> g(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    ComplexField free_wave = propagate_free(h, traj.times[i]);
    g[i] = witness_pairing(traj.snapshots[i], free_wave, p);
  }
  return g;
}

}  // namespace

NormSeries witness_integral(const Trajectory& traj, const ComplexField& h,
                            double p) {
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    if (traj.times[i] - traj.times[i - 1] > 0.5 + 1e-9) {
      throw DomainError(
          "witness_integral: snapshot spacing exceeds 0.5, trapezoid "
          "quadrature untrustworthy");
    }
  }
  const std::vector<double> g = witness_values(traj, h, p);
  NormSeries series;
  series.name = "witness_integral";
  double acc = 0.0;
  series.push(traj.times[0], acc);
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    acc += 0.5 * (g[i] + g[i - 1]) * (traj.times[i] - traj.times[i - 1]);
    series.push(traj.times[i], acc);
  }
  return series;
}

NormSeries witness_integrand(const Trajectory& traj, const ComplexField& h,
                             double p) {
  const std::vector<double> g = witness_values(traj, h, p);
  NormSeries series;
  series.name = "witness_integrand";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    series.push(traj.times[i], g[i]);
  }
  return series;
}

NormSeries witness_envelope_integrand(const std::vector<double>& times,
                                      const ComplexField& h, double p) {
  if (l2_norm(h) < 1e-300) {
    throw DomainError("witness_envelope: degenerate witness h = 0");
  }
  NormSeries series;
  series.name = "witness_envelope_integrand";
  const double half_exp = 0.5 * (p + 1.0);
  for (double t : times) {
    ComplexField wave = propagate_free(h, t);
    double acc = 0.0;
    for (const Complex& v : wave.values) {
      acc += std::pow(std::norm(v), half_exp);
    }
    series.push(t, acc * h.grid->cell_measure());
  }
  return series;
}

NormSeries witness_envelope_integral(const std::vector<double>& times,
                                     const ComplexField& h, double p) {
  NormSeries g = witness_envelope_integrand(times, h, p);
  NormSeries series;
  series.name = "witness_envelope_integral";
  double acc = 0.0;
  series.push(times[0], acc);
  for (std::size_t i = 1; i < times.size(); ++i) {
    acc += 0.5 * (g.samples[i].second + g.samples[i - 1].second) *
           (times[i] - times[i - 1]);
    series.push(times[i], acc);
  }
  return series;
}

NormSeries pullback_increments(const Trajectory& traj,
                               const std::vector<double>& ladder,
                               bool sobolev) {
  NormSeries series;
  series.name = sobolev ? "pullback_increments_h1" : "pullback_increments_l2";
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
    const std::size_t a = traj.index_of_time(ladder[i]);
    const std::size_t b = traj.index_of_time(ladder[i + 1]);
    ComplexField va = pullback(traj.snapshots[a], traj.times[a]);
    ComplexField vb = pullback(traj.snapshots[b], traj.times[b]);
    ComplexField diff = vb - va;
    series.push(ladder[i], sobolev ? h1_norm(diff) : l2_norm(diff));
  }
  return series;
}

}  // namespace cylnls
