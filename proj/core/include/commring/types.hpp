#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace commring {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Default absolute tolerance for complex comparisons.
inline constexpr double kDefaultTol = 1e-12;

inline bool approx_equal(cplx a, cplx b, double tol = kDefaultTol) { return std::abs(a - b) <= tol; }

}  // namespace commring
