#pragma once

#include <vector>

#include "commring/synthesis.hpp"

namespace commring {

/// Hierarchy time attached to the multi-index m: either an active jet variable of the frame
/// (var >= 0) or a frozen value t.
struct TimeFlow {
  MultiIndex m;
  int var = -1;
  double t = 0.0;
};

/// (l_h - l_0) / h at jet order 0.
MatrixDiffOp forward_difference(const MatrixDiffOp& l0, const MatrixDiffOp& lh, double h);

/// Frame whose elements carry exp(-(t/s) d^m log theta(z)) for every flow. Requires |m| >= 2.
JetFrame deform_times(JetFrame frame, const std::vector<TimeFlow>& flows);

/// Frame for k-dimensional spectral data: operator variables x_1..x_{g-k}, then the time slots
/// listed in `times` (0-based x indices), all other x slots frozen at `base`.
JetFrame spatial_time_frame(int g, int k, const std::vector<int>& times, const CVec& base);

struct LaxSetup {
  std::vector<BAElement> basis;
  const Divisor* divisor = nullptr;
  MeromorphicFunction lambda = MeromorphicFunction::constant(1.0);
  std::vector<CVec> z_train;
  std::vector<CVec> z_test;
  int k = 0;
  double h = 1e-3;
  SynthesisOptions options;
};

struct LaxReport {
  SynthesisReport l0;
  SynthesisReport lh;
  SynthesisReport lh2;
  SynthesisReport t;
  double residual_h = 0.0;
  double residual_h2 = 0.0;
  /// residual_h / residual_h2; 2 for first-order convergence.
  double ratio = 0.0;
  /// Residual with the Richardson derivative 2 D(h/2) - D(h).
  double richardson = 0.0;
};

/// L(lambda) at t_1 = 0, h, h/2 and T_1 from the same samples; t_1 is the x slot g - k.
LaxReport lax_experiment(const LaxSetup& setup);

struct HierarchySetup {
  std::vector<BAElement> basis;
  const Divisor* divisor = nullptr;
  std::vector<CVec> z_train;
  std::vector<CVec> z_test;
  int k = 1;
  /// Multi-index of the deformed time t_a; t_b is the plain time t_1.
  MultiIndex m;
  double h = 1e-3;
  /// Also fit at step h/2 for the convergence witness.
  bool halving = false;
  SynthesisOptions options;
};

struct HierarchyReport {
  SynthesisReport la;
  SynthesisReport la_shift_b;
  SynthesisReport lb;
  SynthesisReport lb_shift_a;
  double residual = 0.0;
  /// Filled when halving is requested.
  double residual_h2 = 0.0;
  double ratio = 0.0;
  double richardson = 0.0;
};

/// Zero-curvature residual of the pair (L_a, L_b) with L_a Psi = d_{t_a} Psi and L_b Psi = d_{t_b} Psi.
HierarchyReport hierarchy_experiment(const HierarchySetup& setup);

}  // namespace commring
