#pragma once

#include <cstdint>

#include "commring/ba_basis.hpp"
#include "commring/subvariety.hpp"

namespace commring {

struct RestrictionResult {
  int rank = 0;
  std::int64_t expected = 0;
  int columns = 0;
  int points = 0;
  RVec singular_values;
};

/// Rank with singular values above rel_tol times the largest, after row and column normalization.
int restriction_rank(CMat values, double rel_tol = 1e-8, RVec* sv = nullptr);

/// Restricts {d^a phi_j : n_j + |a| <= n} to the sample on Y^{j+1}; expected rank F_{j+1}(n).
RestrictionResult restriction_rank(const BABasis& basis, const Divisor& div, const SubvarietySample& sample, int n,
                                   int j, double rel_tol = 1e-8);

/// Values of the unit-seed quotients theta_b(z + c/(s n)) / theta(z)^n at the points.
CMat theta_space_values(const Divisor& div, const MultiplierSystem& sys, const CVec& c, int n,
                        const std::vector<CVec>& points);

/// Dimension split of level-n sections against one translate Y_a:
/// V = derivatives of the generators in the first g-1 variables,
/// W = theta_a(z - a) / theta(z) times level n-1 sections with parameter c + s a.
struct VWSplit {
  int rank_v = 0;
  int rank_w = 0;
  int rank_union = 0;
  int columns_v = 0;
  int columns_w = 0;
  std::int64_t expected = 0;
};

VWSplit vw_split(const BABasis& basis, const Divisor& div, const TranslatedDivisor& translate, int n,
                 const std::vector<CVec>& points, double rel_tol = 1e-8);

}  // namespace commring
