#include "commring/multipliers.hpp"

#include <algorithm>
#include <cmath>

#include "commring/error.hpp"
#include "commring/linalg.hpp"

namespace commring {

MultiplierSystem::MultiplierSystem(int s, std::vector<CMat> a, double tol) {
  if (s < 1) fail(ErrorCode::ConfigInvalid, "degree must be positive");
  if (a.empty()) fail(ErrorCode::DimensionMismatch, "no multiplier matrices");
  s_ = s;
  a_ = std::move(a);
  const auto r = a_.front().rows();
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if (a_[j].rows() != r || a_[j].cols() != r) fail(ErrorCode::DimensionMismatch, "A_j must be r x r");
  }
  finish();
  const CMat id = CMat::Identity(r, r);
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if ((a_[j] * a_inv_[j] - id).norm() >= tol) {
      fail(ErrorCode::DegenerateMatrix, "A_" + std::to_string(j + 1) + " is not safely invertible");
    }
    for (std::size_t k = j + 1; k < a_.size(); ++k) {
      if ((a_[j] * a_[k] - a_[k] * a_[j]).norm() >= tol) {
        fail(ErrorCode::DegenerateMatrix,
             "A_" + std::to_string(j + 1) + " and A_" + std::to_string(k + 1) + " do not commute");
      }
    }
  }
}

MultiplierSystem MultiplierSystem::unchecked(int s, std::vector<CMat> a) {
  MultiplierSystem out;
  out.s_ = s;
  out.a_ = std::move(a);
  out.finish();
  return out;
}

MultiplierSystem MultiplierSystem::scalar(int g, int s) {
  return MultiplierSystem(s, std::vector<CMat>(g, CMat::Identity(1, 1)));
}

void MultiplierSystem::finish() {
  a_inv_.clear();
  c_.clear();
  identity_ = true;
  for (const auto& m : a_) {
    Eigen::FullPivLU<CMat> lu(m);
    if (!lu.isInvertible()) fail(ErrorCode::DegenerateMatrix, "singular multiplier matrix");
    a_inv_.push_back(lu.inverse());
    c_.push_back(std::max(matrix_2norm(m), matrix_2norm(a_inv_.back())));
    if (!m.isIdentity(0.0)) identity_ = false;
  }
}

double MultiplierSystem::c_max() const { return *std::max_element(c_.begin(), c_.end()); }

CMat MultiplierSystem::power(const IVec& m) const {
  if (m.size() != g()) fail(ErrorCode::DimensionMismatch, "exponent vector length");
  CMat out = CMat::Identity(r(), r());
  if (identity_) return out;
  for (int j = 0; j < g(); ++j) {
    if (m(j) != 0) out = out * matrix_power(a_[j], a_inv_[j], m(j));
  }
  return out;
}

MultiplierSystem MultiplierSystem::with_degree(int s) const {
  MultiplierSystem out(*this);
  if (s < 1) fail(ErrorCode::ConfigInvalid, "degree must be positive");
  out.s_ = s;
  return out;
}

CMat multiplier(const MultiplierSystem& sys, const RiemannMatrix& omega, const LatticePoint& lambda, const CVec& z) {
  const int g = sys.g();
  if (omega.g() != g || lambda.n.size() != g || lambda.m.size() != g || z.size() != g) {
    fail(ErrorCode::DimensionMismatch, "multiplier arguments must have dimension g");
  }
  const CVec m = lambda.m.cast<cplx>();
  const cplx quad = m.dot(omega.matrix() * m);  // dot conjugates its first argument; m is real
  const cplx lin = m.dot(z);
  const cplx e = std::exp(-static_cast<double>(sys.s()) * kPi * kI * quad - 2.0 * sys.s() * kPi * kI * lin);
  return e * sys.power(lambda.m);
}

double cocycle_residual(const MultiplierSystem& sys, const RiemannMatrix& omega, const LatticePoint& l1,
                        const LatticePoint& l2, const CVec& z) {
  const CVec v1 = l1.vector(omega);
  const CVec v2 = l2.vector(omega);
  const CMat target = multiplier(sys, omega, l1 + l2, z);
  const CMat a = multiplier(sys, omega, l1, z + v2) * multiplier(sys, omega, l2, z);
  const CMat b = multiplier(sys, omega, l2, z + v1) * multiplier(sys, omega, l1, z);
  const double scale = std::max(target.norm(), 1.0);
  return std::max((a - target).norm(), (b - target).norm()) / scale;
}

MultiplierSystem jordan_example(int r, int g, const std::vector<std::vector<cplx>>& poly_coeffs, int s) {
  if (r < 2 || g < 1) fail(ErrorCode::ConfigInvalid, "jordan_example needs r >= 2 and g >= 1");
  if (static_cast<int>(poly_coeffs.size()) != g - 1) {
    fail(ErrorCode::DimensionMismatch, "expected g-1 polynomials");
  }
  CMat j1 = CMat::Identity(r, r);
  for (int i = 0; i + 1 < r; ++i) j1(i, i + 1) = 1.0;
  std::vector<CMat> mats{j1};
  for (int k = 0; k < g - 1; ++k) {
    CMat p = CMat::Zero(r, r);
    CMat pw = CMat::Identity(r, r);
    for (cplx coef : poly_coeffs[k]) {
      p += coef * pw;
      pw = pw * j1;
    }
    Eigen::FullPivLU<CMat> lu(p);
    if (!lu.isInvertible()) fail(ErrorCode::DegenerateMatrix, "p_" + std::to_string(k + 2) + "(A_1) is singular");
    mats.push_back(p);
  }
  return MultiplierSystem(s, std::move(mats));
}

}  // namespace commring
