#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "commring/ba_element.hpp"
#include "commring/combinatorics.hpp"

namespace commring {

/// A homogeneous generating set with its rank witnesses.
struct BABasis {
  std::vector<BAElement> elements;
  LevelSignature signature;
  CVec c;
  std::vector<int> witness_ranks;     // index n-1: rank of {d^a phi_j : n_j + |a| <= n}
  std::vector<std::int64_t> expected;  // index n-1: F_0(n)
  int attempts = 0;

  std::vector<int> levels() const;
  int max_level() const;
  int min_level() const;
};

struct BasisOptions {
  double rank_tol = 1e-8;
  int max_attempts = 10;
  int extra_points = 10;
};

/// Values of d^a phi_j(z, 0) with n_j + |a| <= n at the points; `jets[pt][j][p]` must have order >= n - 1.
/// Columns are enumerated element by element, derivatives in graded order.
CMat spanning_values(const std::vector<std::vector<std::vector<Jet>>>& jets, const std::vector<int>& levels, int n,
                     int derivative_vars);

/// Level-1 elements are the unit-seed thetas of degree s; higher levels get random seeds.
/// When c is absent it is drawn from the fundamental parallelotope; redraws happen on rank loss.
BABasis assemble_basis(const Divisor& div, const MultiplierSystem& sys, std::optional<CVec> c, std::uint64_t seed,
                       const BasisOptions& opts = {});

/// Random off-divisor points in the fundamental parallelotope.
std::vector<CVec> random_points_off_divisor(const Divisor& div, int count, std::mt19937_64& rng,
                                            double margin = 1e-2);

}  // namespace commring
