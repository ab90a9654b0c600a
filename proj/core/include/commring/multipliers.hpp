#pragma once

#include <vector>

#include "commring/riemann_matrix.hpp"
#include "commring/types.hpp"

namespace commring {

/// The lattice point n + Omega m.
struct LatticePoint {
  IVec n;
  IVec m;

  LatticePoint operator+(const LatticePoint& o) const { return {n + o.n, m + o.m}; }
  CVec vector(const RiemannMatrix& omega) const { return omega.lattice_vector(n, m); }
};

/// Degree s together with g pairwise commuting nondegenerate r x r matrices A_j.
class MultiplierSystem {
 public:
  /// Validates nondegeneracy and commutation to `tol`.
  MultiplierSystem(int s, std::vector<CMat> a, double tol = 1e-12);
  /// Skips the commutation check; used to exhibit the failure of the cocycle law.
  static MultiplierSystem unchecked(int s, std::vector<CMat> a);
  /// r = 1, every A_j = 1.
  static MultiplierSystem scalar(int g, int s);

  int g() const { return static_cast<int>(a_.size()); }
  int r() const { return static_cast<int>(a_.front().rows()); }
  int s() const { return s_; }
  const CMat& a(int j) const { return a_[j]; }
  const CMat& a_inv(int j) const { return a_inv_[j]; }
  /// max(|A_j|, |A_j^{-1}|) in the operator 2-norm.
  double c(int j) const { return c_[j]; }
  double c_max() const;
  bool is_identity() const { return identity_; }
  /// A_1^{m_1} ... A_g^{m_g}.
  CMat power(const IVec& m) const;
  /// Same matrices with a different degree.
  MultiplierSystem with_degree(int s) const;

 private:
  MultiplierSystem() = default;
  void finish();
  int s_ = 1;
  std::vector<CMat> a_;
  std::vector<CMat> a_inv_;
  std::vector<double> c_;
  bool identity_ = false;
};

/// e_lambda(z) = exp(-s pi i <m, Omega m> - 2 s pi i <m, z>) A^m.
CMat multiplier(const MultiplierSystem& sys, const RiemannMatrix& omega, const LatticePoint& lambda, const CVec& z);

/// Largest deviation from the two cocycle identities, relative to |e_{lambda+lambda'}(z)|.
double cocycle_residual(const MultiplierSystem& sys, const RiemannMatrix& omega, const LatticePoint& l1,
                        const LatticePoint& l2, const CVec& z);

/// A_1 = single Jordan block J_r(1), A_j = p_j(A_1) with p_j given by ascending coefficients.
MultiplierSystem jordan_example(int r, int g, const std::vector<std::vector<cplx>>& poly_coeffs, int s = 1);

}  // namespace commring
