#pragma once

#include <string>
#include <vector>

#include "cylnls/field.hpp"

namespace cylnls {

enum class FracSign { Positive, Negative };

/// Nodes for the resolvent representation of (-Laplacian_y)^{-s/2}:
/// the spectral-parameter integral over lambda in (0, inf) is mapped by
/// lambda = e^u and split at lambda = split_point into two Gauss-Legendre
/// panels on [u_min, log split] and [log split, u_max].
struct QuadratureScheme {
  int n_nodes = 200;          // total across both panels
  double split_point = 1.0;
  double u_min = -80.0;
  double u_max = 80.0;

  std::vector<double> lambda;  // quadrature nodes in the lambda variable
  std::vector<double> weight;  // combined weights d(lambda) = e^u du

  /// Truncation adequacy against a grid's transverse spectral range.
  std::vector<std::string> coverage_warnings(const CylinderGrid& grid) const;
};

QuadratureScheme make_quadrature(int n_nodes = 200, double split_point = 1.0,
                                 double u_min = -80.0, double u_max = 80.0);

/// (-Laplacian_y)^{+-s/2} as the Fourier multiplier |xi|^{+-s}, x untouched.
/// For the negative sign the xi zero mode is projected out; the removed mass
/// fraction is written to *removed_zero_mode_mass when given. s = 2 admitted
/// for Positive as the plain -Laplacian_y limit.
ComplexField frac_laplacian_fourier(const ComplexField& u, double s,
                                    FracSign sign,
                                    double* removed_zero_mode_mass = nullptr);

/// Resolvent (lambda - Laplacian_y)^{-1}: multiplier (lambda + |xi|^2)^{-1}.
ComplexField resolvent_apply(const ComplexField& u, double lambda);

struct ResolventPowerResult {
  ComplexField field;
  std::vector<std::string> warnings;
};

/// (-Laplacian_y)^{-s/2} by quadrature over resolvents:
/// c(s)^{-1} * sum_i w_i lambda_i^{-s/2} (lambda_i - Laplacian_y)^{-1} u.
/// The xi zero mode is projected out first.
ResolventPowerResult frac_laplacian_resolvent(const ComplexField& u, double s,
                                              const QuadratureScheme& q);

/// c(s) = integral over tau in (0, inf) of tau^{-s/2} (1+tau)^{-1}, computed
/// by wide log-Gauss-Legendre panels. Closed form pi / sin(pi s / 2) is used
/// only as a cross-check in tests.
double c_of_s(double s);

/// The c(s) quadrature loses accuracy near the endpoints of (0, 2).
bool c_of_s_accuracy_warning(double s);

struct InterpolationWitness {
  double lhs = 0.0;     // ||u||_{L_y^{2p}}
  double term_a = 0.0;  // ||(-Laplacian_y)^{s/2} u||_{L_y^2}
  double term_b = 0.0;  // term_a^{1-eta} * ||u||_{L_y^2}^{eta}
  double eta = 0.0;     // Hoelder exponent used, recorded per report
  double mu = 0.0;      // intermediate Lebesgue exponent behind eta
};

/// Empirical two-term Sobolev/interpolation bound on an x-independent field:
/// the quotient lhs / (term_a + term_b) is the observed constant.
InterpolationWitness interpolation_witness(const ComplexField& u, double s,
                                           double p);

}  // namespace cylnls
