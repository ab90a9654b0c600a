#pragma once

#include <cstdint>
#include <vector>

namespace commring {

/// Number of constant-coefficient operators of degree <= n-1 in g variables: C(n+g-1, g); 0 for n <= 0.
std::int64_t S(int g, int n);
/// Brute-force count of monomials of degree <= n-1 in g variables.
std::int64_t S_brute_force(int g, int n);
/// F_0(n) = r (s n)^g, F_{j+1}(n) = F_j(n) - F_j(n-1), F_j(0) = 0.
std::int64_t F(int j, int n, int r, int s, int g);

/// Number of free generators entering at each pole level 1..g.
struct LevelSignature {
  std::vector<std::int64_t> a;
  std::int64_t total() const;
  /// Level of each generator in ascending order.
  std::vector<int> levels() const;
};

/// Solves sum_i a_i S(g, n-i+1) = F_0(n), n = g+1..2g, exactly; NoIntegerSolution otherwise.
/// The result is also checked against the full family of counting identities.
LevelSignature signature(int g, int r, int s);

/// sum_i a_i S(g-j, n-i+1) == F_j(n) for all 0 <= j < max(g-1, 1) and 1 <= n <= n_max.
bool counting_identity_holds(const LevelSignature& sig, int g, int r, int s, int n_max);

}  // namespace commring
