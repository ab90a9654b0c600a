#include "commring/divisor.hpp"

#include <cmath>

#include "commring/error.hpp"

namespace commring {

CVec DivisorPoint::log_gradient() const {
  const int g = log_theta.vars();
  CVec w(g);
  for (int j = 0; j < g; ++j) w(j) = log_theta.coeff(unit_index(g, j));
  return w;
}

Divisor::Divisor(VectorTheta theta, double guard, double scale)
    : theta_(std::move(theta)), guard_(guard), scale_(scale) {
  if (theta_.space().r() != 1) fail(ErrorCode::DimensionMismatch, "divisor theta must be scalar");
}

Divisor Divisor::standard(const RiemannMatrix& omega, int s) {
  auto space = std::make_shared<const ThetaSpace>(MultiplierSystem::scalar(omega.g(), s), omega);
  return Divisor(VectorTheta::unit(space, 0));
}

Jet Divisor::theta_jet(const CVec& z, int order) const {
  return theta_.evaluate_jet(z, CMat::Identity(g(), g()), order, 1e-15).front();
}

bool Divisor::near(const CVec& z) const { return std::abs(theta_jet(z, 0).value()) < guard(); }

DivisorPoint Divisor::at(const CVec& z, int order) const {
  DivisorPoint p;
  p.z = z;
  p.theta = theta_jet(z, order);
  if (std::abs(p.theta.value()) < guard()) {
    fail(ErrorCode::NearDivisor, "|theta(z)| = " + std::to_string(std::abs(p.theta.value())));
  }
  p.log_theta = jet_log(p.theta);
  return p;
}

cplx log_theta_derivative(const VectorTheta& theta, const CVec& z, const MultiIndex& m, double guard) {
  return Divisor(theta, guard).at(z, order(m)).log_derivative(m);
}

CVec find_zero_on_line(const VectorTheta& theta, const CVec& z0, const CVec& dir, int max_iter) {
  const int g = theta.space().g();
  CMat d(g, 1);
  d.col(0) = dir;
  cplx t = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Jet j = theta.evaluate_jet(z0 + t * dir, d, 1, 1e-15).front();
    const cplx f = j.value();
    const cplx fp = j[1];
    if (std::abs(f) < 1e-14) return z0 + t * dir;
    if (fp == 0.0) break;
    t -= f / fp;
    if (std::abs(t) > 10.0) break;
  }
  fail(ErrorCode::NewtonDivergence, "no zero found along the line");
}

double pole_slope(const std::function<cplx(const CVec&)>& f, const CVec& z0, const CVec& dir, double eps_hi,
                  double eps_lo, int samples) {
  const CVec u = dir / dir.norm();
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double eps = eps_hi * std::pow(eps_lo / eps_hi, static_cast<double>(i) / (samples - 1));
    const double x = std::log(eps);
    const double y = std::log(std::abs(f(z0 + eps * u)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = samples;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace commring
