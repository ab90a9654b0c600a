#pragma once

#include "commring/divisor.hpp"

namespace commring {

/// Weierstrass data of the lattice Z + tau Z with the p-function as a jet at x0.
struct EllipticData {
  cplx tau;
  cplx x0;
  /// Jet of p(x0 + y) in one variable.
  Jet wp;
  cplx g2;
  cplx g3;
  /// p(x) = -d^2 log theta(x + shift) + c0.
  cplx c0;
  cplx shift;
  /// Largest theta/lattice disagreement seen during calibration.
  double calibration_error = 0.0;
};

/// p(x) = 1/x^2 + sum' [1/(x - w)^2 - 1/w^2], rows w = n + m tau summed in closed form.
cplx lattice_wp(cplx tau, cplx x);
/// Eisenstein sums sum' w^-4 and sum' w^-6, rows summed in closed form.
cplx eisenstein_g4(cplx tau);
cplx eisenstein_g6(cplx tau);
/// Rectangular truncation |n|, |m| <= bound of sum' w^-k; the oracle for the row sums.
cplx eisenstein_direct(cplx tau, int k, int bound);

/// Calibrates the theta route against the lattice sum and returns the p-jet of the given order.
/// CalibrationFailure when the two routes disagree beyond tol.
EllipticData weierstrass_from_theta(cplx tau, cplx x0, int order, double tol = 1e-8);

/// Jet-level residuals of (p')^2 - 4p^3 + g2 p + g3 and p'' - 6p^2 + g2/2, relative to the largest term.
double wp_equation_residual(const EllipticData& e);
double wp_second_derivative_residual(const EllipticData& e);

}  // namespace commring
