#pragma once

#include "commring/types.hpp"

namespace commring {

/// Singular values in descending order.
RVec singular_values(const CMat& a);
/// Number of singular values above rel_tol * largest.
int numerical_rank(const CMat& a, double rel_tol);
/// Operator 2-norm (largest singular value).
double matrix_2norm(const CMat& a);
/// A_1^{m_1} ... A_g^{m_g} by binary exponentiation; negative powers use the inverses.
CMat matrix_power(const CMat& a, const CMat& a_inv, int m);

/// Least squares with row and column equilibration followed by a
/// column-pivoted Householder QR. One factorization serves many right-hand sides.
class ScaledLeastSquares {
 public:
  explicit ScaledLeastSquares(const CMat& a, bool scale_rows = true);

  CMat solve(const CMat& b) const;
  /// |R_00| / |R_kk| of the equilibrated factor.
  double condition() const { return condition_; }
  int rank(double rel_tol) const;
  Eigen::Index cols() const { return col_scale_.size(); }

 private:
  RVec row_scale_;
  RVec col_scale_;
  Eigen::ColPivHouseholderQR<CMat> qr_;
  double condition_ = 0.0;
};

}  // namespace commring
