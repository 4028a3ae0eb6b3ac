#include "cylnls/integrator.hpp"

#include <cmath>

#include "cylnls/errors.hpp"
#include "cylnls/propagator.hpp"
#include "cylnls/transforms.hpp"

namespace cylnls {

void SimConfig::validate(int d) const {
  if (!(p > 1.0)) throw ConfigError("SimConfig: p must be > 1");
  if (!(p < 1.0 + 4.0 / d)) {
    throw ConfigError("SimConfig: p must stay below the mass-critical 1 + 4/d");
  }
  if (!(dt > 0.0)) throw ConfigError("SimConfig: dt must be positive");
  if (!(t0 >= 0.0)) throw ConfigError("SimConfig: t0 must be >= 0");
  if (!(t0 < t_end)) throw ConfigError("SimConfig: t0 must precede t_end");
  if (snapshot_times.empty()) {
    throw ConfigError("SimConfig: snapshot_times must be nonempty");
  }
  double prev = t0 - 1.0;
  for (double t : snapshot_times) {
    if (t < t0 - 1e-12 || t > t_end + 1e-12) {
      throw ConfigError("SimConfig: snapshot time outside [t0, t_end]");
    }
    if (t <= prev) {
      throw ConfigError("SimConfig: snapshot times must be strictly increasing");
    }
    prev = t;
  }
  if (!(boundary_mass_tol > 0.0) || !(spectral_tail_tol > 0.0)) {
    throw ConfigError("SimConfig: monitor tolerances must be positive");
  }
}

std::size_t Trajectory::index_of_time(double t, double tol) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t) <= tol) return i;
  }
  throw DomainError("trajectory has no snapshot at t = " + std::to_string(t));
}

ComplexField nonlinear_phase_step(const ComplexField& u, double dt, double p) {
  if (u.tag != SpaceTag::Physical) {
    throw ConfigError("nonlinear_phase_step: field must be physical");
  }
  ComplexField out = u;
  const double q = p - 1.0;
  // |u|^(p-1) from |u|^2; integer powers short-circuit the pow call.
  const int qi = static_cast<int>(std::lround(q));
  const bool integer_q = std::abs(q - qi) < 1e-14;
  for (Complex& v : out.values) {
    const double a2 = std::norm(v);
    double amp;
    if (a2 == 0.0) {
      continue;
    } else if (integer_q && qi == 1) {
      amp = std::sqrt(a2);
    } else if (integer_q && qi == 2) {
      amp = a2;
    } else if (integer_q && qi == 3) {
      amp = a2 * std::sqrt(a2);
    } else {
      amp = std::pow(a2, 0.5 * q);
    }
    v *= std::polar(1.0, -dt * amp);
  }
  return out;
}

ComplexField step_strang(const ComplexField& u, double /*t*/, double dt,
                         double p) {
  ComplexField half = propagate_free(u, 0.5 * dt);
  half = nonlinear_phase_step(half, dt, p);
  return propagate_free(half, 0.5 * dt);
}

Trajectory evolve(const ComplexField& u0, const SimConfig& cfg) {
  cfg.validate(u0.grid->d);
  if (u0.tag != SpaceTag::Physical) {
    throw ConfigError("evolve: initial data must be physical");
  }

  Trajectory traj;
  traj.p = cfg.p;
  ComplexField u = u0;
  double t = cfg.t0;

  auto record = [&](double time) {
    traj.times.push_back(time);
    traj.snapshots.push_back(u);
    traj.conserved.emplace_back(time, conserved(u, cfg.p));
    if (boundary_shell_mass_fraction(u) > cfg.boundary_mass_tol) {
      traj.flags.insert(TrajectoryFlag::OutOfDomain);
    }
    if (spectral_tail_fraction(u) > cfg.spectral_tail_tol) {
      traj.flags.insert(TrajectoryFlag::UnderResolved);
    }
  };

  auto check_finite = [&](double time) {
    double acc = 0.0;
    for (const Complex& v : u.values) acc += std::norm(v);
    if (!std::isfinite(acc)) {
      throw DomainError("evolve: state became non-finite at t = " +
                        std::to_string(time));
    }
  };

  std::size_t next = 0;
  if (std::abs(cfg.snapshot_times[0] - cfg.t0) <= 1e-12) {
    record(cfg.t0);
    next = 1;
  }

  while (next < cfg.snapshot_times.size() || t < cfg.t_end - 1e-12) {
    const double stop =
        next < cfg.snapshot_times.size() ? cfg.snapshot_times[next] : cfg.t_end;
    while (t < stop - 1e-12) {
      const double step = std::min(cfg.dt, stop - t);
      u = step_strang(u, t, step, cfg.p);
      t += step;
      check_finite(t);
    }
    t = stop;
    if (next < cfg.snapshot_times.size()) {
      record(stop);
      ++next;
    }
  }
  return traj;
}

std::vector<double> geometric_times(double t0, double t_end) {
  if (!(t0 > 0.0)) throw ConfigError("geometric_times: t0 must be positive");
  std::vector<double> out;
  for (double t = t0; t < t_end - 1e-12; t *= 2.0) out.push_back(t);
  out.push_back(t_end);
  return out;
}

}  // namespace cylnls
