#pragma once

#include <limits>

#include "cylnls/field.hpp"

namespace cylnls {

struct ConservedPair {
  double mass = 0.0;
  double energy = 0.0;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Rectangle-rule integral of |u|^2 over the cylinder. u physical.
double mass(const ComplexField& u);

/// Hamiltonian energy: integral of |grad u|^2/2 + |u|^(p+1)/(p+1), with the
/// gradient taken spectrally in all directions. u physical.
double energy(const ComplexField& u, double p);

ConservedPair conserved(const ComplexField& u, double p);

/// ||u||_{L_y^r L_x^2} (sobolev_x = 0) or ||u||_{L_y^r H_x^1} (sobolev_x = 1):
/// the inner norm per transverse point, then the discrete L^r over y.
/// r_y = kInfinity takes the grid maximum.
double mixed_norm(const ComplexField& u, double r_y, int sobolev_x);

/// ||<y>^2 u||_2 + ||<y> grad u||_2 + ||u||_{H^2}, <y> = (1+|y|^2)^(1/2),
/// H^2 through the multiplier (1 + |xi|^2 + k^2).
double sigma_norm(const ComplexField& u);

/// ||<grad> u||_2 through the multiplier sqrt(1 + |xi|^2 + k^2).
double h1_norm(const ComplexField& u);

/// Fraction of the mass sitting in the outer 10% shell of the transverse box
/// (|y_axis| >= 0.45 L_y on any axis). The out-of-domain monitor.
double boundary_shell_mass_fraction(const ComplexField& u);

/// Fraction of the spectral mass carried by the top 10% of |xi| or |k| modes
/// (the larger of the two). The under-resolution monitor.
double spectral_tail_fraction(const ComplexField& u);

/// Mass restricted to transverse frequencies |xi| <= radius. Equals mass(u)
/// as radius -> infinity; realizes the frequency-ball limit of the light-cone
/// lemma through the discrete Plancherel identity.
double spectral_ball_mass(const ComplexField& u, double radius);

}  // namespace cylnls
