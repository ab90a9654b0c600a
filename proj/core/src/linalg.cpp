#include "commring/linalg.hpp"

#include <cmath>
#include <limits>

namespace commring {

RVec singular_values(const CMat& a) {
  if (a.size() == 0) return RVec();
  Eigen::BDCSVD<CMat> svd(a);
  return svd.singularValues();
}

int numerical_rank(const CMat& a, double rel_tol) {
  const RVec sv = singular_values(a);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++r;
  }
  return r;
}

double matrix_2norm(const CMat& a) {
  const RVec sv = singular_values(a);
  return sv.size() == 0 ? 0.0 : sv(0);
}

CMat matrix_power(const CMat& a, const CMat& a_inv, int m) {
  CMat base = m >= 0 ? a : a_inv;
  unsigned e = static_cast<unsigned>(m >= 0 ? m : -m);
  CMat result = CMat::Identity(a.rows(), a.cols());
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

ScaledLeastSquares::ScaledLeastSquares(const CMat& a, bool scale_rows) {
  row_scale_ = RVec::Ones(a.rows());
  if (scale_rows) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double m = a.row(i).cwiseAbs().maxCoeff();
      if (m > 0.0) row_scale_(i) = 1.0 / m;
    }
  }
  CMat scaled = row_scale_.asDiagonal() * a;
  col_scale_ = RVec::Ones(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double n = scaled.col(j).norm();
    if (n > 0.0) col_scale_(j) = 1.0 / n;
  }
  scaled = scaled * col_scale_.asDiagonal();
  qr_.compute(scaled);
  const auto& r = qr_.matrixR();
  const Eigen::Index k = std::min(r.rows(), r.cols());
  if (k == 0) {
    condition_ = 1.0;
    return;
  }
  const double first = std::abs(r(0, 0));
  const double last = std::abs(r(k - 1, k - 1));
  condition_ = last > 0.0 ? first / last : std::numeric_limits<double>::infinity();
}

CMat ScaledLeastSquares::solve(const CMat& b) const {
  CMat rhs = row_scale_.asDiagonal() * b;
  CMat y = qr_.solve(rhs);
  return col_scale_.asDiagonal() * y;
}

int ScaledLeastSquares::rank(double rel_tol) const {
  const auto& r = qr_.matrixR();
  const Eigen::Index k = std::min(r.rows(), r.cols());
  if (k == 0) return 0;
  const double first = std::abs(r(0, 0));
  int count = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(r(i, i)) > rel_tol * first) ++count;
  }
  return count;
}

}  // namespace commring
