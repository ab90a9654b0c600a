#pragma once

#include <functional>

#include "commring/vector_theta.hpp"

namespace commring {

inline constexpr double kNearDivisorGuard = 1e-8;

/// Local data of the divisor-defining scalar theta at one point: jets of
/// theta(z + y) and log theta(z + y) in the g variables y.
struct DivisorPoint {
  CVec z;
  Jet theta;
  Jet log_theta;

  cplx value() const { return theta.value(); }
  /// grad log theta(z).
  CVec log_gradient() const;
  /// d^m log theta(z).
  cplx log_derivative(const MultiIndex& m) const { return log_theta.derivative_value(m); }
};

/// The zero set Y of a scalar theta of degree s.
class Divisor {
 public:
  /// `scale` is the local magnitude that the NearDivisor guard is relative to.
  explicit Divisor(VectorTheta theta, double guard = kNearDivisorGuard, double scale = 1.0);
  /// Unit seed at l0 = 0 in the scalar theta space of degree s.
  static Divisor standard(const RiemannMatrix& omega, int s);

  const VectorTheta& theta() const { return theta_; }
  int degree() const { return theta_.space().degree(); }
  int g() const { return theta_.space().g(); }
  const RiemannMatrix& omega() const { return theta_.space().omega(); }
  double guard() const { return guard_ * scale_; }

  Jet theta_jet(const CVec& z, int order) const;
  bool near(const CVec& z) const;
  /// NearDivisor when |theta(z)| is below the guard.
  DivisorPoint at(const CVec& z, int order) const;

 private:
  VectorTheta theta_;
  double guard_;
  double scale_;
};

/// d^m log theta(z) for a scalar theta; NearDivisor inside the guard.
cplx log_theta_derivative(const VectorTheta& theta, const CVec& z, const MultiIndex& m,
                          double guard = kNearDivisorGuard);

/// Newton iteration for a zero of theta on the complex line z0 + t dir.
/// Returns the zero, or throws NewtonDivergence.
CVec find_zero_on_line(const VectorTheta& theta, const CVec& z0, const CVec& dir, int max_iter = 60);

/// Least-squares slope of log|f(z0 + eps dir)| against log eps over a geometric range of eps.
double pole_slope(const std::function<cplx(const CVec&)>& f, const CVec& z0, const CVec& dir, double eps_hi = 1e-2,
                  double eps_lo = 1e-4, int samples = 9);

}  // namespace commring
