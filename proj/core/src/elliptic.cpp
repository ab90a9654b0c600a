#include "commring/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "commring/error.hpp"

namespace commring {

namespace {

/// Beyond this row index |q|^m is below double precision for Im tau >= 0.1.
int row_bound(cplx tau) {
  const double im = tau.imag();
  if (im <= 0.0) fail(ErrorCode::ImaginaryPartNotPositiveDefinite, "Im tau must be positive");
  return static_cast<int>(std::ceil(40.0 / (2.0 * kPi * im))) + 2;
}

cplx csc2(cplx a) {
  const cplx s = std::sin(kPi * a);
  return 1.0 / (s * s);
}

/// sum_n (a + n)^-k for k = 2, 4, 6 in terms of u = csc^2(pi a).
cplx row_sum(cplx a, int k) {
  const cplx u = csc2(a);
  const double p2 = kPi * kPi;
  switch (k) {
    case 2:
      return p2 * u;
    case 4:
      return p2 * p2 * (u * u - (2.0 / 3.0) * u);
    case 6:
      return p2 * p2 * p2 * (u * u * u - u * u + (2.0 / 15.0) * u);
    default:
      fail(ErrorCode::IndexOutOfRange, "row sums for k in {2, 4, 6}");
  }
}

double zeta_even(int k) {
  const double p2 = kPi * kPi;
  switch (k) {
    case 4:
      return p2 * p2 / 90.0;
    case 6:
      return p2 * p2 * p2 / 945.0;
    default:
      fail(ErrorCode::IndexOutOfRange, "zeta at 4 or 6");
  }
}

cplx eisenstein(cplx tau, int k) {
  cplx sum = 2.0 * zeta_even(k);
  const int bound = row_bound(tau);
  for (int m = bound; m >= 1; --m) {
    sum += row_sum(static_cast<double>(m) * tau, k) + row_sum(-static_cast<double>(m) * tau, k);
  }
  return sum;
}

}  // namespace

cplx lattice_wp(cplx tau, cplx x) {
  const int bound = row_bound(tau);
  cplx sum = row_sum(x, 2) - kPi * kPi / 3.0;
  for (int m = bound; m >= 1; --m) {
    const cplx mt = static_cast<double>(m) * tau;
    sum += row_sum(x - mt, 2) - row_sum(mt, 2);
    sum += row_sum(x + mt, 2) - row_sum(-mt, 2);
  }
  return sum;
}

cplx eisenstein_g4(cplx tau) { return eisenstein(tau, 4); }
cplx eisenstein_g6(cplx tau) { return eisenstein(tau, 6); }

cplx eisenstein_direct(cplx tau, int k, int bound) {
  cplx sum = 0.0;
  for (int m = -bound; m <= bound; ++m) {
    for (int n = -bound; n <= bound; ++n) {
      if (n == 0 && m == 0) continue;
      sum += std::pow(static_cast<double>(n) + static_cast<double>(m) * tau, -k);
    }
  }
  return sum;
}

EllipticData weierstrass_from_theta(cplx tau, cplx x0, int order, double tol) {
  if (order < 0) fail(ErrorCode::InsufficientJetOrder, "negative jet order");
  CMat om(1, 1);
  om(0, 0) = tau;
  const Divisor div = Divisor::standard(validate_riemann_matrix(om), 1);
  const std::array<cplx, 4> halves{0.0, 0.5, 0.5 * tau, 0.5 + 0.5 * tau};
  cplx shift = halves[0];
  double best = std::numeric_limits<double>::infinity();
  for (const cplx h : halves) {
    const double v = std::abs(div.theta().evaluate(CVec::Constant(1, h)).value[0]);
    if (v < best) {
      best = v;
      shift = h;
    }
  }
  auto minus_d2 = [&](cplx x) { return -div.at(CVec::Constant(1, x + shift), 2).log_derivative({2}); };
  EllipticData e;
  e.tau = tau;
  e.x0 = x0;
  e.shift = shift;
  e.c0 = lattice_wp(tau, x0) - minus_d2(x0);
  const std::array<cplx, 3> probes{x0 + 0.17, x0 + cplx(0.05, 0.21), x0 - cplx(0.11, 0.07)};
  for (const cplx x : probes) {
    const cplx lat = lattice_wp(tau, x);
    const double err = std::abs(minus_d2(x) + e.c0 - lat) / std::max(1.0, std::abs(lat));
    e.calibration_error = std::max(e.calibration_error, err);
  }
  if (!(e.calibration_error <= tol)) {
    fail(ErrorCode::CalibrationFailure,
         "theta and lattice p disagree by " + std::to_string(e.calibration_error) + " > " + std::to_string(tol));
  }
  const DivisorPoint pt = div.at(CVec::Constant(1, x0 + shift), order + 2);
  e.wp = -jet_derive(pt.log_theta, MultiIndex{2});
  e.wp[0] += e.c0;
  e.g2 = 60.0 * eisenstein_g4(tau);
  e.g3 = 140.0 * eisenstein_g6(tau);
  return e;
}

namespace {

double relative_jet_norm(const Jet& r, std::initializer_list<const Jet*> terms) {
  double den = 0.0;
  for (const Jet* t : terms) den = std::max(den, t->max_abs());
  return r.max_abs() / (den > 0.0 ? den : 1.0);
}

}  // namespace

double wp_equation_residual(const EllipticData& e) {
  const Jet d = jet_derive(e.wp, 0);
  const int k = d.order();
  const Jet p = e.wp.truncated(k);
  const Jet lhs = jet_mul(d, d);
  const Jet cube = 4.0 * jet_mul(jet_mul(p, p), p);
  const Jet lin = e.g2 * p;
  Jet r = lhs - cube + lin;
  r[0] += e.g3;
  return relative_jet_norm(r, {&lhs, &cube, &lin});
}

double wp_second_derivative_residual(const EllipticData& e) {
  const Jet d2 = jet_derive(e.wp, MultiIndex{2});
  const Jet p = e.wp.truncated(d2.order());
  const Jet sq = 6.0 * jet_mul(p, p);
  Jet r = d2 - sq;
  r[0] += 0.5 * e.g2;
  return relative_jet_norm(r, {&d2, &sq});
}

}  // namespace commring
