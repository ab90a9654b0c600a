#include "commring/krichever.hpp"

#include <algorithm>
#include <cmath>

#include "commring/ba_basis.hpp"
#include "commring/error.hpp"
#include "commring/random.hpp"
#include "commring/synthesis.hpp"

namespace commring {

std::pair<MatrixDiffOp, MatrixDiffOp> lame_pair(const EllipticData& e) {
  if (e.wp.order() < 5) fail(ErrorCode::InsufficientJetOrder, "p-jet order must be at least 5");
  const Jet dp = jet_derive(e.wp, 0);
  const int jo = dp.order();
  const Jet p = e.wp.truncated(jo);
  const Jet one = Jet::constant(1, jo, 1.0);
  MatrixDiffOp l2(1, 1, 2, jo);
  l2.set_entry({2}, 0, 0, one);
  l2.set_entry({0}, 0, 0, -2.0 * p);
  MatrixDiffOp l3(1, 1, 3, jo);
  l3.set_entry({3}, 0, 0, one);
  l3.set_entry({1}, 0, 0, -3.0 * p);
  l3.set_entry({0}, 0, 0, -1.5 * dp);
  return {l2, l3};
}

CurveCoefficients burchnall_chaundy(const MatrixDiffOp& l2, const MatrixDiffOp& l3) {
  const MatrixDiffOp d = compose(l3, l3) - compose(compose(l2, l2), l2);
  const int jo = d.jet_order();
  const MatrixDiffOp l2t = l2.with_jet_order(jo).with_order(d.order());
  CurveCoefficients cc;
  const Jet a = d.entry({2}, 0, 0);
  cc.alpha = a.value();
  MatrixDiffOp rest = d - cc.alpha * l2t;
  const Jet b = rest.entry({0}, 0, 0);
  cc.beta = b.value();
  rest -= cc.beta * MatrixDiffOp::identity(1, 1, jo);
  const double scale = std::max(op_norm(d), 1.0);
  cc.residual = op_norm(rest) / scale;
  Jet av = a;
  av[0] = 0.0;
  Jet bv = b;
  bv[0] = 0.0;
  cc.variation = std::max(av.max_abs(), bv.max_abs()) / scale;
  return cc;
}

OracleReport oracle_synthesis_crosscheck(const EllipticData& e, int points, std::uint64_t seed) {
  CMat om(1, 1);
  om(0, 0) = e.tau;
  const Divisor div = Divisor::standard(validate_riemann_matrix(om), 1);
  const int order = std::max(8, e.wp.order());
  const CVec c = CVec::Constant(1, e.x0);
  // theta(u + shift) exp(pi i u) is odd in u, so the gauge needs the linear correction -pi i.
  const Jet th = div.theta_jet(c + CVec::Constant(1, e.shift), order);
  CVec w0(1);
  w0[0] = cplx(0.0, -kPi);
  const Jet pre = jet_mul(jet_exp(Jet::linear(order, 0.0, w0)), jet_inv(th));
  std::vector<BAElement> basis{make_element(div, 1, div.theta(), c, pre)};
  const RandomStreams streams(seed);
  auto rng = streams.stream("oracle-points");
  auto pts = random_points_off_divisor(div, 2 * points, rng, 5e-2);
  CollocationProblem pr;
  pr.basis = basis;
  pr.divisor = &div;
  pr.lambda = MeromorphicFunction::sum(MeromorphicFunction::scaled(-1.0, MeromorphicFunction::log_derivative({2})),
                                       MeromorphicFunction::constant(e.c0));
  pr.z_train.assign(pts.begin(), pts.begin() + points);
  pr.z_test.assign(pts.begin() + points, pts.end());
  pr.frame = JetFrame::full(1);
  pr.options.jet_order = 4;
  const SynthesisReport rep = synthesize(pr);
  const auto [l2, l3] = lame_pair(e);
  OracleReport out;
  out.synthesized = rep.op;
  out.test_residual = rep.test_residual;
  out.match = relative_difference(rep.op, l2);
  out.commutator = relative_commutator(rep.op, l3);
  return out;
}

}  // namespace commring
