#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cylnls/field.hpp"
#include "cylnls/integrator.hpp"

namespace cylnls {

struct PowerLawFit {
  double gamma_hat = 0.0;  // decay exponent: value ~ C t^{-gamma_hat}
  double intercept = 0.0;  // log C
  double r2 = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

struct NormSeries {
  std::string name;
  std::vector<std::pair<double, double>> samples;  // (t, value), t increasing
  std::optional<PowerLawFit> fit;

  void push(double t, double value) { samples.emplace_back(t, value); }
};

/// Least-squares slope of log value vs log t inside the window. Requires at
/// least 4 samples there, all positive. gamma_hat = -slope.
PowerLawFit fit_decay(const NormSeries& series, double window_lo,
                      double window_hi);

/// The fractional vector field |J(t)|^s u:
///   e^{-it Laplacian_x}, multiply by exp(-i|y|^2/4t), t^s (-Laplacian_y)^{s/2},
///   multiply by exp(+i|y|^2/4t), applied in that order.
/// Requires t >= grid.chirp_min_time() so the chirp is resolvable.
ComplexField j_operator(const ComplexField& u, double t, double s);

/// The same operator in its Heisenberg-conjugated form
///   2^{-s} e^{it Laplacian_y} |y|^s e^{-it Laplacian_y} e^{-it Laplacian_x},
/// algebraically identical on the continuum. This discretization commutes
/// exactly with the discrete free flow, which makes it the right route for
/// strong-form equation residuals; the chirp-sandwich route accumulates
/// aliasing from the sampled quadratic phase against the kink tails of the
/// fractional multiplier.
ComplexField j_operator_conjugated(const ComplexField& u, double t, double s);

/// Relative residual of the |J|^s evolution equation at snapshot time t:
///   i d/dt(|J|^s u) + Laplacian_y |J|^s u - |J|^s(|u|^{p-1} u),
/// with the time derivative a central difference over the snapshots at
/// t -+ delta. delta = 0 infers the local snapshot spacing. O(delta^2) plus
/// the integrator's O(dt^2) is the expected size.
double j_equation_residual(const Trajectory& traj, double t, double s, double p,
                           double delta = 0.0);

/// v(t) = e^{-it Laplacian} u(t); constant in t exactly on free flows.
ComplexField pullback(const ComplexField& u, double t);

/// Numerical scattering state: the pullback of the final snapshot. Refuses
/// flagged trajectories.
ComplexField extract_scattering_state(const Trajectory& traj);

/// Running integral I(T) of Re integral |u|^{p-1} u conj(e^{itD} h) dy dx over
/// snapshot times (trapezoid in t; spacing must be <= 0.5). Convergence of
/// I(T) is necessary for scattering; growth certifies its failure.
NormSeries witness_integral(const Trajectory& traj, const ComplexField& h,
                            double p);

/// The per-time integrand of the witness integral.
NormSeries witness_integrand(const Trajectory& traj, const ComplexField& h,
                             double p);

/// The scattering-hypothesis envelope of the witness integrand: substituting
/// u = e^{itD} h into the pairing collapses it to integral |e^{itD} h|^{p+1},
/// which is phase-robust and bounded below by c0 t^{-d(p-1)/2} for large t.
/// Its running integral grows like T^{1-d(p-1)/2}; in the long-range regime
/// that divergence is what rules the scattering hypothesis out.
NormSeries witness_envelope_integrand(const std::vector<double>& times,
                                      const ComplexField& h, double p);
NormSeries witness_envelope_integral(const std::vector<double>& times,
                                     const ComplexField& h, double p);

/// ||v(t_{j+1}) - v(t_j)|| of the pullback along the given time ladder,
/// in the H^1 norm (sobolev) or L^2 (not). Sample j is stored at t_j.
NormSeries pullback_increments(const Trajectory& traj,
                               const std::vector<double>& ladder,
                               bool sobolev);

}  // namespace cylnls
