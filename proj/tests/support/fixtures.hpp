#pragma once

#include "commring/riemann_matrix.hpp"

namespace commring::fixtures {

inline RiemannMatrix omega_g1() {
  CMat m(1, 1);
  m(0, 0) = cplx(0.0, 1.0);
  return validate_riemann_matrix(m);
}

inline RiemannMatrix omega_g2() {
  CMat m(2, 2);
  m << cplx(0.2, 1.0), cplx(0.3, 0.2),
       cplx(0.3, 0.2), cplx(-0.1, 1.2);
  return validate_riemann_matrix(m);
}

inline RiemannMatrix omega_g3() {
  CMat m(3, 3);
  m << cplx(0.1, 1.0), cplx(0.2, 0.1), cplx(0.1, -0.15),
       cplx(0.2, 0.1), cplx(-0.2, 1.1), cplx(0.25, 0.1),
       cplx(0.1, -0.15), cplx(0.25, 0.1), cplx(0.05, 0.9);
  return validate_riemann_matrix(m);
}

/// Translate defining Y^1 in the g = 3 runs.
inline CVec translate_g3() {
  CVec a(3);
  a << cplx(0.31, 0.12), cplx(-0.17, 0.23), cplx(0.05, -0.29);
  return a;
}

inline constexpr std::uint64_t kBasisSeed = 11;
inline constexpr std::uint64_t kPointSeed = 5;
inline constexpr std::uint64_t kSampleSeed = 21;

}  // namespace commring::fixtures
