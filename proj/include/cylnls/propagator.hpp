#pragma once

#include "cylnls/field.hpp"

namespace cylnls {

enum class TorusDirection { Forward, Inverse };

/// Exact free flow e^{it Laplacian} on the discretized cylinder: spectral
/// multiplier exp(-i t (|xi|^2 + k^2)). Sign convention fixed by
/// i du/dt + Laplacian u = 0; every module reuses it.
ComplexField propagate_free(const ComplexField& u0, double t);

/// Torus-only factor: multiplier exp(-+ i t k^2) in the x spectrum.
/// Forward realizes e^{it Laplacian_x}, Inverse its adjoint e^{-it Laplacian_x}.
ComplexField propagate_torus(const ComplexField& u, double t,
                             TorusDirection direction);

/// t^{d/2} ||e^{itD} h||_{L_y^inf H_x^1} / ||h||_{L_y^1 H_x^1}. A plateau of
/// this ratio over a time ladder exhibits the t^{-d/2} dispersive rate.
double dispersive_ratio(const ComplexField& h, double t);

/// Mass of e^{itD} h inside the light cone |y| <= K t. Requires the cone to
/// stay inside the box: K t < L_y / 2.
double lightcone_mass(const ComplexField& h, double t, double K);

}  // namespace cylnls
