#pragma once

#include <utility>

#include "commring/elliptic.hpp"
#include "commring/matrix_diff_op.hpp"

namespace commring {

/// L2 = d^2 - 2p, L3 = d^3 - 3p d - (3/2)p', coefficients as jets at x0.
std::pair<MatrixDiffOp, MatrixDiffOp> lame_pair(const EllipticData& e);

/// Curve L3^2 = L2^3 + alpha L2 + beta.
struct CurveCoefficients {
  cplx alpha;
  cplx beta;
  /// |L3^2 - L2^3 - alpha L2 - beta| relative to |L3^2 - L2^3|, over all jet orders.
  double residual = 0.0;
  /// Spread of the x-jets of alpha and beta read off the coefficients; 0 for constants.
  double variation = 0.0;
};

CurveCoefficients burchnall_chaundy(const MatrixDiffOp& l2, const MatrixDiffOp& l3);

struct OracleReport {
  MatrixDiffOp synthesized{1, 1, 0, 0};
  double test_residual = 0.0;
  /// |L_synth - L2| / max(|L_synth|, |L2|).
  double match = 0.0;
  /// [L_synth, L3] relative to |L_synth| |L3|.
  double commutator = 0.0;
};

/// Synthesizes L(p) from the g = 1 Baker-Akhiezer function psi(x, z) with its pole on the theta zero
/// and compares the result with the Lame operator at x0 = c. `e` must carry x0 = c.
OracleReport oracle_synthesis_crosscheck(const EllipticData& e, int points = 24, std::uint64_t seed = 7);

}  // namespace commring
