#include <doctest.h>

#include <cmath>
#include <memory>

#include "commring/divisor.hpp"
#include "commring/error.hpp"
#include "commring/meromorphic.hpp"
#include "commring/vector_theta.hpp"
#include "fixtures.hpp"

using namespace commring;

namespace {

std::shared_ptr<const ThetaSpace> space_of(const MultiplierSystem& sys, const RiemannMatrix& om) {
  return std::make_shared<const ThetaSpace>(sys, om);
}

VectorTheta random_theta(const std::shared_ptr<const ThetaSpace>& space, std::mt19937_64& rng) {
  return VectorTheta(space, complex_normal_vector(rng, space->dimension()));
}

CVec unit_vector(int g, int j) {
  CVec e = CVec::Zero(g);
  e(j) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("classical theta constant") {
  const auto space = space_of(MultiplierSystem::scalar(1, 1), fixtures::omega_g1());
  const VectorTheta th = VectorTheta::unit(space, 0);
  const ThetaValue v = th.evaluate(CVec::Zero(1));
  CHECK(std::abs(v.value(0) - 1.0864348112133080146) < 1e-10);
  CHECK(v.error_bound < 1e-14);
}

TEST_CASE("closed-form coefficients") {
  const auto scalar = space_of(MultiplierSystem::scalar(1, 1), fixtures::omega_g1());
  const VectorTheta th = VectorTheta::unit(scalar, 0);
  CHECK(std::abs(th.coefficient(IVec::Constant(1, 2))(0) - std::exp(-4.0 * kPi)) < 1e-20);

  const RiemannMatrix om = fixtures::omega_g2();
  const MultiplierSystem sys = jordan_example(2, 2, {{0.5, 0.5}}, 2);
  const auto space = space_of(sys, om);
  auto rng = RandomStreams(4).stream("coeff");
  const VectorTheta v = random_theta(space, rng);
  for (int i = 0; i < space->seed_count(); ++i) {
    const IVec l0 = space->l0(i);
    CHECK((v.coefficient(l0) - v.seed(i)).norm() == 0.0);
  }
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 100; ++t) {
    const IVec l = IVec::NullaryExpr(2, [&] { return d(rng); });
    for (int j = 0; j < 2; ++j) {
      IVec next = l;
      next(j) += sys.s();
      const cplx phase = std::exp(static_cast<double>(sys.s()) * kPi * kI * om(j, j) +
                                  2.0 * kPi * kI * (l.cast<cplx>().transpose() * om.matrix().col(j))(0));
      const CVec by_recurrence = phase * (sys.a_inv(j) * v.coefficient(l));
      const CVec direct = v.coefficient(next);
      CHECK((direct - by_recurrence).norm() <= 1e-13 * std::max(1.0, direct.norm()));
    }
  }
}

TEST_CASE("truncation radius") {
  const auto scalar = space_of(MultiplierSystem::scalar(1, 1), fixtures::omega_g1());
  MajorantParams p;
  CHECK(scalar->truncation_radius(p, 1e-14) <= 4);

  CMat thin(1, 1);
  thin(0, 0) = cplx(0.0, 1e-4);
  const auto flat = space_of(MultiplierSystem::scalar(1, 1), validate_riemann_matrix(thin));
  try {
    flat->truncation_radius(p, 1e-300);
    FAIL("expected TolTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TolTooSmall);
  }

  const auto jordan = space_of(jordan_example(2, 2, {{0.5, 0.5}}), fixtures::omega_g2());
  int previous = 0;
  for (double radius = 0.1; radius < 4.0; radius *= 2.0) {
    MajorantParams q;
    q.domain_radius = radius;
    const int r = jordan->truncation_radius(q, 1e-12);
    CHECK(r >= previous);
    previous = r;
  }
}

TEST_CASE("integer periodicity and quasi-periodicity") {
  const RiemannMatrix om = fixtures::omega_g2();
  auto rng = RandomStreams(5).stream("quasi");
  for (int s = 1; s <= 2; ++s) {
    const auto space = space_of(jordan_example(2, 2, {{0.5, 0.5}}, s), om);
    const VectorTheta th = random_theta(space, rng);
    std::uniform_int_distribution<int> d(-1, 1);
    for (int t = 0; t < 20; ++t) {
      const CVec z = random_torus_point(om, rng);
      const IVec m = IVec::NullaryExpr(2, [&] { return d(rng); });
      const IVec n = IVec::NullaryExpr(2, [&] { return d(rng); });
      const CVec base = th.evaluate(z).value;
      const CVec shifted = th.evaluate(z + n.cast<cplx>()).value;
      CHECK((shifted - base).norm() <= 1e-12 * std::max(1.0, base.norm()));
      CHECK(theta_quasi_periodicity_residual(th, z, m, n) < 1e-9);
    }
  }
}

TEST_CASE("certified error bound dominates the change from a larger radius") {
  const RiemannMatrix om = fixtures::omega_g2();
  const auto space = space_of(jordan_example(2, 2, {{0.0, 0.0, 1.0}}, 2), om);
  auto rng = RandomStreams(6).stream("cert");
  const MultiIndex zero{0, 0};
  for (int t = 0; t < 100; ++t) {
    const VectorTheta th = random_theta(space, rng);
    const CVec z = random_torus_point(om, rng);
    const ThetaValue v = th.evaluate(z, zero, 1e-10);
    const CVec wider = th.evaluate_with_radius(z, zero, v.truncation_radius + 2);
    CHECK((wider - v.value).norm() <= v.error_bound + 1e-13 * std::max(1.0, v.value.norm()));
  }
}

TEST_CASE("derivatives agree with finite differences") {
  const RiemannMatrix om = fixtures::omega_g2();
  const auto space = space_of(jordan_example(2, 2, {{0.5, 0.5}}), om);
  auto rng = RandomStreams(7).stream("fd");
  const double h = 1e-4;
  for (int t = 0; t < 10; ++t) {
    const VectorTheta th = random_theta(space, rng);
    const CVec z = random_torus_point(om, rng);
    for (int j = 0; j < 2; ++j) {
      MultiIndex e(2, 0);
      e[j] = 1;
      const CVec exact = th.evaluate(z, e).value;
      const CVec fd = (th.evaluate(z + h * unit_vector(2, j)).value - th.evaluate(z - h * unit_vector(2, j)).value) /
                      (2.0 * h);
      CHECK((fd - exact).norm() <= 1e-6 * std::max(1.0, exact.norm()));
    }
  }
}

TEST_CASE("jets match pointwise derivatives") {
  const RiemannMatrix om = fixtures::omega_g2();
  const auto space = space_of(jordan_example(2, 2, {{0.5, 0.5}}), om);
  auto rng = RandomStreams(8).stream("jets");
  const VectorTheta th = random_theta(space, rng);
  const CVec z = random_torus_point(om, rng);
  const std::vector<Jet> jets = th.evaluate_jet(z, CMat::Identity(2, 2), 3);
  for (const MultiIndex& a : indices_up_to(2, 3)) {
    const CVec d = th.evaluate(z, a).value;
    for (int p = 0; p < 2; ++p) CHECK(std::abs(jets[p].derivative_value(a) - d(p)) <= 1e-11 * std::max(1.0, d.norm()));
  }
}

TEST_CASE("basis dimension equals r s^g") {
  auto rng = RandomStreams(fixtures::kBasisSeed).stream("basis");
  const ThetaBasis classical = theta_basis(MultiplierSystem::scalar(2, 1), fixtures::omega_g2(), rng);
  CHECK(classical.elements.size() == 1);

  const ThetaBasis b8 = theta_basis(jordan_example(2, 2, {{0.5, 0.5}}, 2), fixtures::omega_g2(), rng);
  CHECK(b8.elements.size() == 8);
  CHECK(b8.gram_rank == 8);

  const ThetaBasis b3 = theta_basis(MultiplierSystem::scalar(1, 3), fixtures::omega_g1(), rng);
  CHECK(b3.elements.size() == 3);
  CHECK(b3.gram_rank == 3);
}

TEST_CASE("log derivative of the classical theta") {
  const Divisor div = Divisor::standard(fixtures::omega_g1(), 1);
  const VectorTheta& th = div.theta();
  const CVec z = CVec::Constant(1, 0.5);
  const cplx log0 = log_theta_derivative(th, z, {0});
  CHECK(std::abs(log0 - std::log(th.evaluate(z).value(0))) < 1e-14);

  const double h = 1e-4;
  const cplx exact = log_theta_derivative(th, z, {1});
  const cplx fd = (std::log(th.evaluate(z + CVec::Constant(1, h)).value(0)) -
                   std::log(th.evaluate(z - CVec::Constant(1, h)).value(0))) /
                  (2.0 * h);
  CHECK(std::abs(exact - fd) < 1e-7);

  const CVec zero = find_zero_on_line(th, CVec::Constant(1, cplx(0.45, 0.45)), CVec::Constant(1, 1.0));
  CHECK(std::abs(zero(0) - cplx(0.5, 0.5)) < 1e-10);
  try {
    log_theta_derivative(th, zero, {1});
    FAIL("expected NearDivisor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NearDivisor);
  }
}

TEST_CASE("meromorphic theta quotients") {
  const Divisor d1 = Divisor::standard(fixtures::omega_g1(), 1);
  const MeromorphicFunction one = meromorphic_function(d1, 1, CVec::Ones(1));
  auto rng = RandomStreams(9).stream("mero");
  const CVec z = random_torus_point(fixtures::omega_g1(), rng);
  CHECK(std::abs(one.evaluate(d1, z) - 1.0) < 1e-12);

  const Divisor d2 = Divisor::standard(fixtures::omega_g2(), 1);
  const MeromorphicFunction f = meromorphic_function(d2, 2, complex_normal_vector(rng, 4));
  std::uniform_int_distribution<int> d(-1, 1);
  for (int t = 0; t < 20; ++t) {
    const CVec w = random_torus_point(fixtures::omega_g2(), rng);
    if (d2.near(w)) continue;
    const IVec m = IVec::NullaryExpr(2, [&] { return d(rng); });
    const IVec k = IVec::NullaryExpr(2, [&] { return d(rng); });
    CHECK(lattice_invariance_residual(f, d2, w, m, k) < 1e-9);
  }

  const MeromorphicFunction quad = meromorphic_function(d1, 2, (CVec(2) << 1.0, cplx(0.3, 0.2)).finished());
  const CVec z0 = CVec::Constant(1, cplx(0.5, 0.5));
  const double slope = pole_slope([&](const CVec& x) { return quad.evaluate(d1, x); }, z0,
                                  CVec::Constant(1, cplx(0.6, 0.8)));
  CHECK(std::abs(slope + 2.0) < 0.1);
}
