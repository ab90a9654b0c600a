#include "commring/riemann_matrix.hpp"

#include <cmath>

#include "commring/error.hpp"

namespace commring {

RiemannMatrix validate_riemann_matrix(const CMat& m, double pivot_tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    fail(ErrorCode::DimensionMismatch, "Riemann matrix must be square and non-empty");
  }
  const auto g = m.rows();
  for (Eigen::Index j = 0; j < g; ++j) {
    for (Eigen::Index k = j + 1; k < g; ++k) {
      if (m(j, k) != m(k, j)) fail(ErrorCode::NotSymmetric, "entries (" + std::to_string(j) + "," + std::to_string(k) + ") differ");
    }
  }
  RMat im = m.imag();
  Eigen::LDLT<RMat> ldlt(im);
  const RVec d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > pivot_tol)) {
      fail(ErrorCode::ImaginaryPartNotPositiveDefinite, "pivot " + std::to_string(i) + " = " + std::to_string(d(i)));
    }
  }
  RiemannMatrix out;
  out.omega_ = m;
  out.imag_ = im;
  Eigen::SelfAdjointEigenSolver<RMat> es(im);
  out.lambda_min_ = es.eigenvalues().minCoeff();
  out.lambda_max_ = es.eigenvalues().maxCoeff();
  return out;
}

CVec RiemannMatrix::lattice_vector(const IVec& n, const IVec& m) const {
  return n.cast<cplx>() + omega_ * m.cast<cplx>();
}

CVec RiemannMatrix::reduce(const CVec& z, IVec* n_out, IVec* m_out) const {
  const RVec u = imag_.ldlt().solve(RVec(z.imag()));
  IVec m(g());
  for (int j = 0; j < g(); ++j) m(j) = static_cast<int>(std::floor(u(j) + 0.5));
  CVec w = z - omega_ * m.cast<cplx>();
  IVec n(g());
  for (int j = 0; j < g(); ++j) n(j) = static_cast<int>(std::floor(w(j).real() + 0.5));
  w -= n.cast<cplx>();
  if (n_out) *n_out = n;
  if (m_out) *m_out = m;
  return w;
}

}  // namespace commring
