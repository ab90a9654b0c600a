#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "commring/divisor.hpp"

namespace commring {

/// A translate Y_a = { z : theta_a(z - a) = 0 }.
struct TranslatedDivisor {
  VectorTheta theta;
  CVec a;
};

/// Points on the intersection Y^k of k translates.
struct SubvarietySample {
  std::vector<CVec> points;
  std::vector<double> residuals;   // max_j |theta_j(z - a_j)|
  std::vector<double> conditions;  // condition of the k x k slice Jacobian
};

struct SubvarietyOptions {
  double residual_tol = 1e-10;
  int max_newton = 50;
  int oversampling = 20;
  /// Reject points where the base divisor theta falls below this magnitude.
  double base_margin = 1e-2;
  /// When false, k = g-1 (a curve) is also accepted.
  bool require_k_below_g_minus_1 = true;
};

/// Newton iteration on a random affine slice z0 + D u, D of rank k; points are reduced
/// to the fundamental domain and must keep the residual below the tolerance.
SubvarietySample subvariety_sample(const std::vector<TranslatedDivisor>& translates, const Divisor& base, int count,
                                   std::uint64_t seed, const SubvarietyOptions& opts = {});

/// CSV with re/im per coordinate, residual and Jacobian condition.
void write_sample_csv(const SubvarietySample& sample, const std::string& path);

}  // namespace commring
