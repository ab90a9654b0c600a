#include <doctest.h>

#include <cmath>
#include <functional>

#include "commring/error.hpp"
#include "commring/jet.hpp"
#include "commring/linalg.hpp"
#include "commring/monomials.hpp"
#include "commring/parallel.hpp"
#include "commring/riemann_matrix.hpp"
#include "test_util.hpp"

using namespace commring;
using testing::random_jet;
using testing::rel_err;

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

Jet poly(int vars, int order, std::initializer_list<std::pair<MultiIndex, cplx>> terms) {
  Jet j(vars, order);
  for (const auto& [a, c] : terms) j.set(a, c);
  return j;
}

}  // namespace

TEST_CASE("riemann matrix validation") {
  CMat one(1, 1);
  one(0, 0) = kI;
  CHECK(validate_riemann_matrix(one).g() == 1);

  CMat two(2, 2);
  two << kI, 0.3, 0.3, 2.0 * kI;
  const RiemannMatrix om = validate_riemann_matrix(two);
  CHECK(om.lambda_min() == doctest::Approx(1.0));
  CHECK(om.lambda_max() == doctest::Approx(2.0));

  CMat neg(1, 1);
  neg(0, 0) = -kI;
  CHECK(code_of([&] { validate_riemann_matrix(neg); }) == ErrorCode::ImaginaryPartNotPositiveDefinite);

  CMat asym(2, 2);
  asym << kI, 0.3, 0.3 + 1e-15, kI;
  CHECK(code_of([&] { validate_riemann_matrix(asym); }) == ErrorCode::NotSymmetric);
}

TEST_CASE("riemann matrix acceptance matches the quadratic form") {
  auto rng = RandomStreams(3).stream("riemann");
  for (int trial = 0; trial < 40; ++trial) {
    const double angle = uniform(rng, 0.0, kPi);
    const double sign = trial % 2 == 0 ? 1.0 : -1.0;
    RMat q(2, 2);
    q << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    const RVec eig = (RVec(2) << uniform(rng, 0.5, 2.0), sign * uniform(rng, 0.2, 1.0)).finished();
    const RMat im = q * eig.asDiagonal() * q.transpose();
    CMat om(2, 2);
    om << cplx(0.1, im(0, 0)), cplx(0.2, im(0, 1)), cplx(0.2, im(0, 1)), cplx(-0.3, im(1, 1));
    bool form_positive = true;
    for (int k = 0; k < 100; ++k) {
      const RVec v = RVec::NullaryExpr(2, [&] { return normal(rng); });
      if (v.dot(im * v) <= 0.0) form_positive = false;
    }
    bool accepted = true;
    try {
      validate_riemann_matrix(om);
    } catch (const Error&) {
      accepted = false;
    }
    CHECK(accepted == form_positive);
  }
}

TEST_CASE("lattice reduction") {
  CMat two(2, 2);
  two << cplx(0.1, 1.0), 0.3, 0.3, cplx(0.0, 1.5);
  const RiemannMatrix om = validate_riemann_matrix(two);
  CVec z(2);
  z << cplx(2.7, 3.1), cplx(-1.4, -2.2);
  IVec n, m;
  const CVec red = om.reduce(z, &n, &m);
  CHECK((red + om.lattice_vector(n, m) - z).norm() < 1e-13);
}

TEST_CASE("monomial enumeration") {
  CHECK(indices_of_degree(2, 2).size() == 3);
  CHECK(indices_up_to(3, 2).size() == 10);
  auto t = MonomialTable::get(3, 4);
  for (int i = 0; i < t->size(); ++i) CHECK(t->find(t->index(i)) == i);
  auto small = MonomialTable::get(3, 2);
  for (int i = 0; i < small->size(); ++i) CHECK(small->index(i) == t->index(i));
  CHECK(factorial(MultiIndex{2, 3}) == 12.0);
}

TEST_CASE("jet_mul examples") {
  const Jet a = poly(1, 2, {{{0}, 1.0}, {{1}, 1.0}});
  const Jet b = poly(1, 2, {{{0}, 1.0}, {{1}, -1.0}});
  const Jet p = jet_mul(a, b);
  CHECK(p.coeff({0}) == cplx(1.0));
  CHECK(p.coeff({1}) == cplx(0.0));
  CHECK(p.coeff({2}) == cplx(-1.0));

  const Jet c = poly(1, 1, {{{0}, 1.0}, {{1}, 1.0}});
  const Jet sq = jet_mul(c, c);
  CHECK(sq.order() == 1);
  CHECK(sq.coeff({1}) == cplx(2.0));

  const Jet e1 = jet_exp(Jet::variable(1, 3, 0));
  const Jet e2 = jet_exp(-Jet::variable(1, 3, 0));
  CHECK(jet_distance(jet_mul(e1, e2), Jet::constant(1, 3, 1.0)) < 1e-15);

  CHECK(code_of([] { jet_mul(Jet(1, 2), Jet(2, 2)); }) == ErrorCode::VarCountMismatch);
}

TEST_CASE("jet_derive examples") {
  const Jet x2 = poly(1, 2, {{{2}, 1.0}});
  const Jet d = jet_derive(x2, 0);
  CHECK(d.order() == 1);
  CHECK(d.coeff({1}) == cplx(2.0));

  const Jet x1 = Jet::variable(2, 3, 0);
  CHECK(jet_derive(x1, 1).max_abs() == 0.0);

  const Jet f = poly(2, 3, {{{1, 1}, 1.0}, {{2, 1}, 1.0}});
  const Jet df = jet_derive(f, 0);
  CHECK(df.coeff({0, 1}) == cplx(1.0));
  CHECK(df.coeff({1, 1}) == cplx(2.0));
  CHECK(df.max_abs() == 2.0);

  CHECK(code_of([&] { jet_derive(f, 2); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("jet ring axioms on random inputs") {
  auto rng = RandomStreams(7).stream("jets");
  for (int trial = 0; trial < 50; ++trial) {
    const int vars = 1 + trial % 3;
    const Jet a = random_jet(rng, vars, 4);
    const Jet b = random_jet(rng, vars, 4);
    const Jet c = random_jet(rng, vars, 4);
    CHECK(rel_err(jet_mul(jet_mul(a, b), c), jet_mul(a, jet_mul(b, c))) < 1e-13);
    CHECK(rel_err(jet_mul(a, b + c), jet_mul(a, b) + jet_mul(a, c)) < 1e-13);
    CHECK(rel_err(jet_mul(a, b), jet_mul(b, a)) < 1e-13);
  }
}

TEST_CASE("jet multiplication agrees with polynomial evaluation") {
  auto rng = RandomStreams(8).stream("poly");
  const Jet a = random_jet(rng, 2, 3);
  const Jet b = random_jet(rng, 2, 3);
  const Jet a1 = Jet(MonomialTable::get(2, 6), [&] {
    CVec v = CVec::Zero(MonomialTable::get(2, 6)->size());
    v.head(a.size()) = a.coeffs();
    return v;
  }());
  const Jet b1 = Jet(MonomialTable::get(2, 6), [&] {
    CVec v = CVec::Zero(MonomialTable::get(2, 6)->size());
    v.head(b.size()) = b.coeffs();
    return v;
  }());
  const Jet full = jet_mul(a1, b1);
  CVec y(2);
  y << cplx(0.3, -0.2), cplx(-0.7, 0.4);
  CHECK(std::abs(full.evaluate(y) - a.evaluate(y) * b.evaluate(y)) < 1e-12);
}

TEST_CASE("partial derivatives commute exactly") {
  auto rng = RandomStreams(9).stream("derive");
  const Jet f = random_jet(rng, 3, 5);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const Jet a = jet_derive(jet_derive(f, j), k);
      const Jet b = jet_derive(jet_derive(f, k), j);
      CHECK(jet_distance(a, b) == 0.0);
    }
  }
}

TEST_CASE("exp, log, inverse and power") {
  auto rng = RandomStreams(10).stream("series");
  Jet f = random_jet(rng, 2, 5);
  f[0] = cplx(1.3, 0.4);
  CHECK(rel_err(jet_exp(jet_log(f)), f) < 1e-12);
  CHECK(rel_err(jet_mul(f, jet_inv(f)), Jet::constant(2, 5, 1.0)) < 1e-12);
  CHECK(rel_err(jet_pow(f, 3), jet_mul(f, jet_mul(f, f))) < 1e-12);
}

TEST_CASE("linear substitution and restriction") {
  auto rng = RandomStreams(11).stream("subst");
  const Jet f = random_jet(rng, 2, 4);
  CMat p(2, 1);
  p << 1.0, 2.0;
  const Jet g = jet_linear_substitute(f, p, 4);
  CVec y(1);
  y << cplx(0.01, 0.02);
  CVec x = p * y;
  CHECK(std::abs(g.evaluate(y) - f.evaluate(x)) < 1e-12);
  const Jet r = jet_restrict(f, {0});
  CVec x0(2);
  x0 << y(0), 0.0;
  CHECK(std::abs(r.evaluate(y) - f.evaluate(x0)) < 1e-14);
}

TEST_CASE("scaled least squares recovers exact solutions") {
  auto rng = RandomStreams(12).stream("ls");
  CMat a = CMat::NullaryExpr(30, 6, [&] { return complex_normal(rng); });
  a.row(3) *= 1e6;
  a.col(2) *= 1e-5;
  const CVec x = CVec::NullaryExpr(6, [&] { return complex_normal(rng); });
  const ScaledLeastSquares ls(a);
  CHECK((ls.solve(a * x) - x).norm() / x.norm() < 1e-9);
  CHECK(ls.condition() < 1e3);
  CHECK(numerical_rank(a, 1e-12) == 6);
}

TEST_CASE("parallel_for visits every index once and propagates errors") {
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](int i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](int i) {
                    if (i == 7) fail(ErrorCode::IndexOutOfRange, "seven");
                  }),
                  Error);
}

TEST_CASE("named random streams are reproducible and independent") {
  const RandomStreams s(42);
  auto a = s.stream("alpha");
  auto b = s.stream("alpha");
  auto c = s.stream("beta");
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
}
