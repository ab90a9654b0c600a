#include "commring/flows.hpp"

#include <algorithm>

#include "commring/error.hpp"

namespace commring {

JetFrame deform_times(JetFrame frame, const std::vector<TimeFlow>& flows) {
  for (const auto& fl : flows) {
    if (static_cast<int>(fl.m.size()) != frame.g()) fail(ErrorCode::ShapeMismatch, "time multi-index length");
    if (order(fl.m) < 2) fail(ErrorCode::ConfigInvalid, "hierarchy times need |m| >= 2");
    if (fl.var >= 0) {
      if (fl.var >= frame.vars()) fail(ErrorCode::IndexOutOfRange, "time variable");
      frame.flows.push_back({fl.var, fl.m});
    } else {
      frame.fixed_flows.push_back({fl.m, fl.t});
    }
  }
  return frame;
}

MatrixDiffOp forward_difference(const MatrixDiffOp& l0, const MatrixDiffOp& lh, double h) {
  return (1.0 / h) * (lh.with_jet_order(0) - l0.with_jet_order(0));
}

JetFrame spatial_time_frame(int g, int k, const std::vector<int>& times, const CVec& base) {
  if (k < 0 || k >= g) fail(ErrorCode::ConfigInvalid, "need 0 <= k < g");
  if (base.size() != g) fail(ErrorCode::ShapeMismatch, "frame base length");
  const int nv = g - k + static_cast<int>(times.size());
  JetFrame f;
  f.P = CMat::Zero(g, nv);
  for (int v = 0; v < g - k; ++v) f.P(v, v) = 1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= 0) {
      if (times[i] >= g) fail(ErrorCode::IndexOutOfRange, "time slot");
      f.P(times[i], g - k + static_cast<int>(i)) = 1.0;
    }
  }
  f.base = base;
  return f;
}

namespace {

CollocationProblem at_time(const LaxSetup& s, int slot, double t) {
  const int g = s.divisor->g();
  CVec base = CVec::Zero(g);
  base[slot] = t;
  CollocationProblem p;
  p.basis = s.basis;
  p.divisor = s.divisor;
  p.lambda = s.lambda;
  p.z_train = s.z_train;
  p.z_test = s.z_test;
  p.frame = spatial_time_frame(g, s.k, {}, base);
  p.options = s.options;
  return p;
}

}  // namespace

LaxReport lax_experiment(const LaxSetup& s) {
  if (!s.divisor) fail(ErrorCode::ConfigInvalid, "Lax setup without a divisor");
  const int g = s.divisor->g();
  const int slot = g - s.k - (s.k == 0 ? 1 : 0);
  LaxReport r;
  r.l0 = synthesize(at_time(s, slot, 0.0));
  r.lh = synthesize(at_time(s, slot, s.h));
  r.lh2 = synthesize(at_time(s, slot, 0.5 * s.h));
  TimeProblem tp;
  tp.basis = s.basis;
  tp.divisor = s.divisor;
  tp.z_train = s.z_train;
  tp.z_test = s.z_test;
  tp.op_vars = g - s.k;
  if (s.k == 0) {
    tp.frame = spatial_time_frame(g, 0, {}, CVec::Zero(g));
    tp.time_var = slot;
  } else {
    tp.frame = spatial_time_frame(g, s.k, {slot}, CVec::Zero(g));
    tp.time_var = g - s.k;
  }
  tp.order_bound = g;
  tp.shift = 1;
  tp.options = s.options;
  r.t = time_operator(tp);
  r.residual_h = lax_residual(r.l0.op, r.lh.op, r.t.op, s.h);
  r.residual_h2 = lax_residual(r.l0.op, r.lh2.op, r.t.op, 0.5 * s.h);
  r.ratio = r.residual_h2 > 0.0 ? r.residual_h / r.residual_h2 : 0.0;
  const MatrixDiffOp rich = 2.0 * forward_difference(r.l0.op, r.lh2.op, 0.5 * s.h) -
                            forward_difference(r.l0.op, r.lh.op, s.h);
  const MatrixDiffOp bracket = commutator(r.t.op, r.l0.op).with_jet_order(0);
  const double den = op_norm_at(bracket, 0);
  r.richardson = op_norm_at(rich - bracket, 0) / (den > 0.0 ? den : 1.0);
  return r;
}

namespace {

SynthesisReport hierarchy_operator(const HierarchySetup& s, bool deformed, double ta, double tb) {
  const int g = s.divisor->g();
  const int slot = g - s.k;
  CVec base = CVec::Zero(g);
  base[slot] = tb;
  TimeProblem tp;
  tp.basis = s.basis;
  tp.divisor = s.divisor;
  tp.z_train = s.z_train;
  tp.z_test = s.z_test;
  tp.op_vars = g - s.k;
  tp.time_var = g - s.k;
  tp.order_bound = g;
  tp.options = s.options;
  std::vector<TimeFlow> flows{{s.m, -1, ta}};
  if (deformed) {
    tp.frame = spatial_time_frame(g, s.k, {-1}, base);
    flows.push_back({s.m, g - s.k, 0.0});
    tp.shift = order(s.m);
  } else {
    tp.frame = spatial_time_frame(g, s.k, {slot}, base);
    tp.shift = 1;
  }
  tp.frame = deform_times(tp.frame, flows);
  return time_operator(tp);
}

}  // namespace

HierarchyReport hierarchy_experiment(const HierarchySetup& s) {
  if (!s.divisor) fail(ErrorCode::ConfigInvalid, "hierarchy setup without a divisor");
  if (s.k < 1) fail(ErrorCode::ConfigInvalid, "hierarchy brackets need k >= 1");
  HierarchyReport r;
  r.la = hierarchy_operator(s, true, 0.0, 0.0);
  r.la_shift_b = hierarchy_operator(s, true, 0.0, s.h);
  r.lb = hierarchy_operator(s, false, 0.0, 0.0);
  r.lb_shift_a = hierarchy_operator(s, false, s.h, 0.0);
  r.residual = zero_curvature_residual(r.la.op, r.la_shift_b.op, r.lb.op, r.lb_shift_a.op, s.h);
  if (s.halving) {
    const SynthesisReport la_b2 = hierarchy_operator(s, true, 0.0, 0.5 * s.h);
    const SynthesisReport lb_a2 = hierarchy_operator(s, false, 0.5 * s.h, 0.0);
    r.residual_h2 = zero_curvature_residual(r.la.op, la_b2.op, r.lb.op, lb_a2.op, 0.5 * s.h);
    r.ratio = r.residual_h2 > 0.0 ? r.residual / r.residual_h2 : 0.0;
    const MatrixDiffOp db_la = 2.0 * forward_difference(r.la.op, la_b2.op, 0.5 * s.h) -
                               forward_difference(r.la.op, r.la_shift_b.op, s.h);
    const MatrixDiffOp da_lb = 2.0 * forward_difference(r.lb.op, lb_a2.op, 0.5 * s.h) -
                               forward_difference(r.lb.op, r.lb_shift_a.op, s.h);
    const MatrixDiffOp br = commutator(r.la.op, r.lb.op).with_jet_order(0);
    const double den = std::max({op_norm_at(db_la, 0), op_norm_at(da_lb, 0), op_norm_at(br, 0)});
    r.richardson = op_norm_at(db_la - da_lb + br, 0) / (den > 0.0 ? den : 1.0);
  }
  return r;
}

}  // namespace commring
