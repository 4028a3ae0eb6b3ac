#pragma once

#include <set>
#include <vector>

#include "cylnls/field.hpp"
#include "cylnls/norms.hpp"

namespace cylnls {

struct SimConfig {
  double p = 4.0;            // nonlinearity exponent, > 1 (defocusing only)
  double dt = 0.02;          // time step
  double t0 = 0.0;           // start time (Cauchy data given at t0)
  double t_end = 1.0;
  std::vector<double> snapshot_times;   // strictly increasing, within [t0, t_end]
  double boundary_mass_tol = 1e-8;      // OUT_OF_DOMAIN threshold
  double spectral_tail_tol = 1e-8;      // UNDER_RESOLVED threshold
  double amplitude = 0.0;    // initial-data scale, carried for reports

  void validate(int d) const;  // throws ConfigError
};

enum class TrajectoryFlag { OutOfDomain, UnderResolved };

struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexField> snapshots;
  std::vector<std::pair<double, ConservedPair>> conserved;
  std::set<TrajectoryFlag> flags;
  double p = 0.0;  // exponent the run used

  std::size_t index_of_time(double t, double tol = 1e-9) const;  // throws DomainError
};

/// Exactly solvable nonlinear substep of the defocusing equation with the
/// Laplacian dropped: pointwise phase rotation u * exp(-i dt |u|^(p-1)).
ComplexField nonlinear_phase_step(const ComplexField& u, double dt, double p);

/// Symmetric Strang step: free half step, full nonlinear phase, free half
/// step. Both substeps are unimodular multipliers, so mass is conserved to
/// roundoff.
ComplexField step_strang(const ComplexField& u, double t, double dt, double p);

/// March from t0 to t_end recording snapshots and conserved quantities at the
/// configured times; sets OUT_OF_DOMAIN / UNDER_RESOLVED flags from the
/// boundary and spectral-tail monitors. NaN or Inf in the state aborts with
/// the offending time.
Trajectory evolve(const ComplexField& u0, const SimConfig& cfg);

/// Geometric snapshot ladder t0 * 2^j intersected with [t0, t_end], with
/// t_end appended. Decay fits are log-log, so this is the default spacing.
std::vector<double> geometric_times(double t0, double t_end);

}  // namespace cylnls
