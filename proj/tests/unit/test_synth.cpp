#include <doctest.h>

#include <cmath>

#include "commring/ba_basis.hpp"
#include "commring/error.hpp"
#include "commring/flows.hpp"
#include "commring/synthesis.hpp"
#include "fixtures.hpp"

using namespace commring;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ConfigInvalid;
}

struct Genus2 {
  Divisor div = Divisor::standard(fixtures::omega_g2(), 1);
  BABasis basis = assemble_basis(div, MultiplierSystem::scalar(2, 1), std::nullopt, fixtures::kBasisSeed);
  std::vector<CVec> pts;

  Genus2() {
    auto rng = RandomStreams(fixtures::kPointSeed).stream("unit-g2");
    pts = random_points_off_divisor(div, 120, rng, 5e-2);
  }
  std::vector<CVec> slice(int a, int b) const { return {pts.begin() + a, pts.begin() + b}; }
  CollocationProblem problem(const MeromorphicFunction& lambda) const {
    CollocationProblem p;
    p.basis = basis.elements;
    p.divisor = &div;
    p.lambda = lambda;
    p.z_train = slice(0, 40);
    p.z_test = slice(80, 120);
    p.frame = JetFrame::full(2);
    return p;
  }
};

const Genus2& genus2() {
  static const Genus2 g;
  return g;
}

const MeromorphicFunction kLambda1 = MeromorphicFunction::log_derivative({2, 0});
const MeromorphicFunction kLambda2 = MeromorphicFunction::log_derivative({1, 1});

}  // namespace

TEST_CASE("constants embed as scalar matrices") {
  const auto& s = genus2();
  const SynthesisReport r = synthesize(s.problem(MeromorphicFunction::constant(1.0)));
  CHECK(r.train_residual < 1e-12);
  CHECK(r.test_residual < 1e-12);
  const MatrixDiffOp id = MatrixDiffOp::identity(2, 2, r.op.jet_order());
  CHECK(relative_difference(r.op, id) < 1e-12);
  CHECK(verify_commutativity(r, r) == 0.0);
}

TEST_CASE("genus two synthesis generalizes and is unique") {
  const auto& s = genus2();
  const SynthesisReport r1 = synthesize(s.problem(kLambda1));
  CHECK(r1.order == 2);
  CHECK(r1.op.n() == 2);
  CHECK(r1.op.vars() == 2);
  CHECK(r1.test_residual < 1e-6);
  CHECK(r1.test_residual <= 10.0 * std::max(r1.train_residual, 1e-15));
  CHECK(verify_commutativity(r1, r1) == 0.0);

  CollocationProblem other = s.problem(kLambda1);
  other.z_train = s.slice(40, 80);
  CHECK(relative_difference(r1.op, synthesize(other).op) < 1e-5);
}

TEST_CASE("the embedding is linear and multiplicative") {
  const auto& s = genus2();
  const SynthesisReport r1 = synthesize(s.problem(kLambda1));
  const SynthesisReport r2 = synthesize(s.problem(kLambda2));
  CHECK(verify_commutativity(r1, r2) < 1e-6);

  const cplx alpha(0.7, 0.2);
  const cplx beta(-1.1, 0.5);
  const auto combo = MeromorphicFunction::sum(MeromorphicFunction::scaled(alpha, kLambda1),
                                              MeromorphicFunction::scaled(beta, kLambda2));
  const SynthesisReport rc = synthesize(s.problem(combo));
  CHECK(relative_difference(rc.op, alpha * r1.op + beta * r2.op) < 1e-6);

  CollocationProblem prod = s.problem(MeromorphicFunction::product(kLambda1, kLambda2));
  prod.z_train = s.slice(0, 80);
  const SynthesisReport rp = synthesize(prod);
  CHECK(rp.test_residual < 1e-5);
  CHECK(relative_difference(rp.op, compose(r1.op, r2.op), 0) < 1e-5);
}

TEST_CASE("collocation preconditions") {
  const auto& s = genus2();
  CollocationProblem overlap = s.problem(kLambda1);
  overlap.z_test = s.slice(30, 50);
  CHECK(code_of([&] { synthesize(overlap); }) == ErrorCode::ConfigInvalid);
  CollocationProblem tiny = s.problem(kLambda1);
  tiny.z_train = s.slice(0, 2);
  CHECK(code_of([&] { synthesize(tiny); }) == ErrorCode::InsufficientPoints);
}

TEST_CASE("an operator-variable time is the partial derivative") {
  const auto& s = genus2();
  TimeProblem tp;
  tp.basis = s.basis.elements;
  tp.divisor = &s.div;
  tp.z_train = s.slice(0, 40);
  tp.z_test = s.slice(80, 120);
  tp.frame = JetFrame::full(2);
  tp.time_var = 1;
  tp.op_vars = 2;
  tp.order_bound = 2;
  const SynthesisReport t = time_operator(tp);
  CHECK(t.test_residual < 1e-8);
  CHECK(relative_difference(t.op, MatrixDiffOp::derivative(2, 2, t.op.jet_order(), 1)) < 1e-8);
}

TEST_CASE("a constant exponential time factor gives a scalar time operator") {
  const auto& s = genus2();
  const cplx mu(0.4, -0.3);
  JetFrame frame = JetFrame::full(2);
  frame.P.conservativeResize(2, 3);
  frame.P.col(2).setZero();
  CVec w = CVec::Zero(3);
  w(2) = mu;
  const Jet factor = jet_exp(Jet::linear(10, 0.0, w));
  std::vector<BAElement> basis = s.basis.elements;
  for (auto& e : basis) e.prefactor = factor;
  TimeProblem tp;
  tp.basis = basis;
  tp.divisor = &s.div;
  tp.z_train = s.slice(0, 40);
  tp.z_test = s.slice(80, 120);
  tp.frame = frame;
  tp.time_var = 2;
  tp.op_vars = 2;
  tp.order_bound = 2;
  const SynthesisReport t = time_operator(tp);
  CHECK(t.test_residual < 1e-8);
  CHECK(relative_difference(t.op, mu * MatrixDiffOp::identity(2, 2, t.op.jet_order())) < 1e-8);
}

TEST_CASE("lax experiment with a constant eigenvalue") {
  const auto& s = genus2();
  LaxSetup ls;
  ls.basis = s.basis.elements;
  ls.divisor = &s.div;
  ls.lambda = MeromorphicFunction::constant(2.0);
  ls.z_train = s.slice(0, 40);
  ls.z_test = s.slice(80, 120);
  const LaxReport lx = lax_experiment(ls);
  CHECK(op_norm_at(forward_difference(lx.l0.op, lx.lh.op, ls.h), 0) < 1e-10);
  CHECK(op_norm_at(commutator(lx.t.op, lx.l0.op), 0) < 1e-10 * std::max(1.0, op_norm(lx.t.op)));
}

TEST_CASE("time deformations") {
  const auto& s = genus2();
  const JetFrame base = JetFrame::full(2);
  const JetFrame same = deform_times(base, {});
  CHECK(same.flows.empty());
  CHECK(same.fixed_flows.empty());
  CHECK((same.P - base.P).norm() == 0.0);

  CHECK(code_of([&] { deform_times(base, {{{1, 0}, -1, 0.0}}); }) == ErrorCode::ConfigInvalid);

  const JetFrame frozen = deform_times(base, {{{2, 0}, -1, 0.0}, {{1, 1}, -1, 0.0}});
  const CVec z = s.pts.front();
  const DivisorPoint pt = s.div.at(z, 4);
  const auto plain = evaluate_basis_jets(s.basis.elements, s.div, pt, base, 3);
  const auto deformed = evaluate_basis_jets(s.basis.elements, s.div, pt, frozen, 3);
  for (std::size_t j = 0; j < plain.size(); ++j) {
    CHECK(jet_distance(plain[j][0], deformed[j][0]) < 1e-12 * std::max(1.0, plain[j][0].max_abs()));
  }
}

TEST_CASE("operator order must match the pole order") {
  const auto& s = genus2();
  CollocationProblem p = s.problem(kLambda1);
  p.order = 1;
  p.options.max_extra_order = 0;
  const SynthesisReport r = synthesize(p);
  CHECK(r.order == 1);
  CHECK(r.test_residual > 1e-3);
}
