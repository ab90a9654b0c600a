#include "commring/combinatorics.hpp"

#include <numeric>

#include "commring/error.hpp"
#include "commring/monomials.hpp"

namespace commring {

std::int64_t S(int g, int n) {
  if (n <= 0) return 0;
  // C(n+g-1, g) = n (n+1) ... (n+g-1) / g!, accumulated so every partial quotient is exact.
  std::int64_t v = 1;
  for (int i = 0; i < g; ++i) v = v * (n + i) / (i + 1);
  return v;
}

std::int64_t S_brute_force(int g, int n) {
  if (n <= 0) return 0;
  return static_cast<std::int64_t>(indices_up_to(g, n - 1).size());
}

std::int64_t F(int j, int n, int r, int s, int g) {
  if (j < 0 || j >= g) fail(ErrorCode::IndexOutOfRange, "F index j must satisfy 0 <= j < g");
  if (n <= 0) return 0;
  if (j == 0) {
    std::int64_t v = r;
    for (int i = 0; i < g; ++i) v *= static_cast<std::int64_t>(s) * n;
    return v;
  }
  return F(j - 1, n, r, s, g) - F(j - 1, n - 1, r, s, g);
}

std::int64_t LevelSignature::total() const { return std::accumulate(a.begin(), a.end(), std::int64_t{0}); }

std::vector<int> LevelSignature::levels() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::int64_t k = 0; k < a[i]; ++k) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

LevelSignature signature(int g, int r, int s) {
  if (g < 1) fail(ErrorCode::ConfigInvalid, "g must be positive");
  using i128 = __int128;
  // Fraction-free Gaussian elimination on the augmented g x (g+1) system.
  std::vector<std::vector<i128>> m(g, std::vector<i128>(g + 1));
  for (int row = 0; row < g; ++row) {
    const int n = g + 1 + row;
    for (int i = 0; i < g; ++i) m[row][i] = S(g, n - i);
    m[row][g] = F(0, n, r, s, g);
  }
  i128 prev = 1;
  for (int k = 0; k < g; ++k) {
    int piv = k;
    while (piv < g && m[piv][k] == 0) ++piv;
    if (piv == g) fail(ErrorCode::NoIntegerSolution, "singular counting system");
    std::swap(m[k], m[piv]);
    for (int i = k + 1; i < g; ++i) {
      for (int j = k + 1; j <= g; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  // Back substitution over the rationals, demanding integrality at every step.
  std::vector<i128> a(g);
  for (int k = g - 1; k >= 0; --k) {
    i128 rhs = m[k][g];
    for (int j = k + 1; j < g; ++j) rhs -= m[k][j] * a[j];
    if (rhs % m[k][k] != 0) fail(ErrorCode::NoIntegerSolution, "non-integral level count");
    a[k] = rhs / m[k][k];
    if (a[k] < 0) fail(ErrorCode::NoIntegerSolution, "negative level count");
  }
  LevelSignature sig;
  for (auto v : a) sig.a.push_back(static_cast<std::int64_t>(v));
  if (!counting_identity_holds(sig, g, r, s, 2 * g + 5)) {
    fail(ErrorCode::NoIntegerSolution, "signature violates the counting identity");
  }
  return sig;
}

bool counting_identity_holds(const LevelSignature& sig, int g, int r, int s, int n_max) {
  const int g_eff = static_cast<int>(sig.a.size());
  if (g_eff != g) return false;
  const int j_end = std::max(g - 1, 1);
  for (int j = 0; j < j_end; ++j) {
    for (int n = 1; n <= n_max; ++n) {
      std::int64_t lhs = 0;
      for (int i = 0; i < g; ++i) lhs += sig.a[i] * S(g - j, n - i);
      if (lhs != F(j, n, r, s, g)) return false;
    }
  }
  return true;
}

}  // namespace commring
