#pragma once

#include "commring/types.hpp"

namespace commring {

/// Symmetric g x g period matrix with positive definite imaginary part.
/// Construct through validate_riemann_matrix; the stored value is immutable.
class RiemannMatrix {
 public:
  int g() const { return static_cast<int>(omega_.rows()); }
  const CMat& matrix() const { return omega_; }
  cplx operator()(int j, int k) const { return omega_(j, k); }
  const RMat& imag() const { return imag_; }
  /// Smallest eigenvalue of Im(Omega); feeds the truncation majorant.
  double lambda_min() const { return lambda_min_; }
  /// Largest eigenvalue of Im(Omega).
  double lambda_max() const { return lambda_max_; }

  /// Lattice vector n + Omega m.
  CVec lattice_vector(const IVec& n, const IVec& m) const;

  /// Reduce z modulo the lattice so that Im z = Im(Omega) u with u in [-1/2, 1/2)^g and
  /// Re z in [-1/2, 1/2)^g. Returns the reduced point and the (n, m) that was subtracted.
  CVec reduce(const CVec& z, IVec* n_out = nullptr, IVec* m_out = nullptr) const;

 private:
  friend RiemannMatrix validate_riemann_matrix(const CMat& m, double pivot_tol);
  CMat omega_;
  RMat imag_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

/// Throws NotSymmetric unless the matrix is exactly symmetric and
/// ImaginaryPartNotPositiveDefinite unless every LDLT pivot of Im exceeds pivot_tol.
RiemannMatrix validate_riemann_matrix(const CMat& m, double pivot_tol = 1e-12);

}  // namespace commring
