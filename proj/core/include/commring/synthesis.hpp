#pragma once

#include <map>
#include <string>
#include <vector>

#include "commring/matrix_diff_op.hpp"
#include "commring/meromorphic.hpp"
#include "commring/point_jets.hpp"

namespace commring {

inline constexpr double kIllConditioned = 1e10;

struct FitOptions {
  /// Column set for row i: levels[j] + |a| <= levels[i] + shift.
  int shift = 0;
  int min_order = 0;
  int max_order = 0;
  int jet_order = 2;
  /// A row whose held-out residual exceeds this is refit at the next order.
  double escalate_above = 1e-7;
  double ill_conditioned = kIllConditioned;
};

struct SynthesisReport {
  MatrixDiffOp op{1, 1, 0, 0};
  double train_residual = 0.0;
  double test_residual = 0.0;
  double condition = 0.0;
  int order = 0;
  std::vector<int> row_orders;
  bool escalated = false;
  std::vector<std::string> log;
  std::map<std::string, double> commutator_checks;
};

/// Data of one fit: design jets Phi in the operator variables and target jets per row.
struct FitData {
  /// phi[pt][j][p], order >= max_order + jet_order.
  std::vector<std::vector<std::vector<Jet>>> phi;
  /// target[pt][i][p], order >= jet_order.
  std::vector<std::vector<std::vector<Jet>>> target;
};

/// Jet level by jet level least squares for sum_a sum_j c_{a,ij}(y) d^a Phi_j = target_i.
SynthesisReport fit_operator(const FitData& train, const FitData& test, const std::vector<int>& levels,
                             const FitOptions& opts);

/// sqrt(sum |L Phi - target|^2) / sqrt(sum |target|^2) over all points, rows, components and jet coefficients.
double fit_residual(const MatrixDiffOp& op, const FitData& data);

struct SynthesisOptions {
  /// Coefficient jet order; -1 picks the highest allowed operator order plus one so that
  /// commutators keep a jet of order >= 1.
  int jet_order = -1;
  /// Extra orders allowed beyond the pole order (default: max_level - min_level).
  int max_extra_order = -1;
  double escalate_above = 1e-7;
  int jobs = 1;
};

/// Operator L(lambda) with L Phi = lambda Phi on the sample points.
struct CollocationProblem {
  std::vector<BAElement> basis;
  const Divisor* divisor = nullptr;
  MeromorphicFunction lambda = MeromorphicFunction::constant(1.0);
  std::vector<CVec> z_train;
  std::vector<CVec> z_test;
  JetFrame frame;
  /// Operator order to start from; the pole order of lambda by default.
  int order = -1;
  SynthesisOptions options;
};

SynthesisReport synthesize(const CollocationProblem& problem);

/// Builds the fit data of lambda Phi = L Phi from precomputed jets.
FitData eigen_fit_data(const std::vector<PointJets>& pts, const MeromorphicFunction& lambda, int jet_order);

/// |[L1, L2]| at the available jet orders relative to |L1| |L2|.
double verify_commutativity(const SynthesisReport& a, const SynthesisReport& b);
double relative_commutator(const MatrixDiffOp& a, const MatrixDiffOp& b);
/// |a - b| / max(|a|, |b|) at the shared jet order.
double relative_difference(const MatrixDiffOp& a, const MatrixDiffOp& b, int jet_order = -1);

/// Fit of T with T Phi = d_t Phi, where t is frame variable `time_var`. Operators act on the first
/// `op_vars` frame variables; when time_var < op_vars the time is itself an operator variable.
struct TimeProblem {
  std::vector<BAElement> basis;
  const Divisor* divisor = nullptr;
  std::vector<CVec> z_train;
  std::vector<CVec> z_test;
  JetFrame frame;
  int time_var = 0;
  int op_vars = 0;
  int order_bound = 0;
  /// Pole shift of the right-hand side (1 for a plain time, |m| for a hierarchy flow).
  int shift = 1;
  SynthesisOptions options;
};

SynthesisReport time_operator(const TimeProblem& problem);

/// |(L(h) - L(0))/h - [T, L(0)]| / |[T, L(0)]| at jet order 0.
double lax_residual(const MatrixDiffOp& l0, const MatrixDiffOp& lh, const MatrixDiffOp& t, double h);

/// |d_b L_a - d_a L_b + [L_a, L_b]| relative to the largest term, at jet order 0, from forward differences.
double zero_curvature_residual(const MatrixDiffOp& la, const MatrixDiffOp& la_shift_b, const MatrixDiffOp& lb,
                               const MatrixDiffOp& lb_shift_a, double h);

}  // namespace commring
