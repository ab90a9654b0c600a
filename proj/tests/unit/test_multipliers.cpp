#include <doctest.h>

#include <cmath>

#include "commring/error.hpp"
#include "commring/multipliers.hpp"
#include "commring/random.hpp"
#include "fixtures.hpp"

using namespace commring;

namespace {

RiemannMatrix tau_i() {
  CMat m(1, 1);
  m(0, 0) = kI;
  return validate_riemann_matrix(m);
}

CMat jordan2() {
  CMat j(2, 2);
  j << 1.0, 1.0, 0.0, 1.0;
  return j;
}

LatticePoint random_lattice_point(std::mt19937_64& rng, int g, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IVec n(g), m(g);
  for (int j = 0; j < g; ++j) {
    n(j) = d(rng);
    m(j) = d(rng);
  }
  return {n, m};
}

}  // namespace

TEST_CASE("pure integer translations act trivially") {
  const RiemannMatrix om = fixtures::omega_g2();
  const MultiplierSystem sys = jordan_example(2, 2, {{0.0, 0.0, 1.0}});
  auto rng = RandomStreams(1).stream("integer");
  for (int t = 0; t < 100; ++t) {
    LatticePoint l = random_lattice_point(rng, 2, 5);
    l.m.setZero();
    const CVec z = complex_normal_vector(rng, 2);
    CHECK((multiplier(sys, om, l, z) - CMat::Identity(2, 2)).norm() == 0.0);
  }
}

TEST_CASE("scalar multiplier at a period") {
  const RiemannMatrix om = tau_i();
  const MultiplierSystem sys = MultiplierSystem::scalar(1, 1);
  const LatticePoint l{IVec::Zero(1), IVec::Ones(1)};
  const CMat e = multiplier(sys, om, l, CVec::Zero(1));
  CHECK(std::abs(e(0, 0) - std::exp(kPi)) < 1e-12 * std::exp(kPi));
}

TEST_CASE("jordan multiplier at m = -1 follows the defining formula") {
  const RiemannMatrix om = tau_i();
  const MultiplierSystem sys = jordan_example(2, 1, {});
  const LatticePoint l{IVec::Zero(1), -IVec::Ones(1)};
  const CMat e = multiplier(sys, om, l, CVec::Zero(1));
  const CMat expected = std::exp(kPi) * jordan2().inverse();
  CHECK((e - expected).norm() < 1e-12 * expected.norm());
}

TEST_CASE("jordan_example examples") {
  const MultiplierSystem sq = jordan_example(2, 2, {{0.0, 0.0, 1.0}});
  CHECK((sq.a(0) - jordan2()).norm() == 0.0);
  CMat a2(2, 2);
  a2 << 1.0, 2.0, 0.0, 1.0;
  CHECK((sq.a(1) - a2).norm() < 1e-15);
  CHECK((sq.a_inv(1) * sq.a(1) - CMat::Identity(2, 2)).norm() < 1e-12);

  const MultiplierSystem single = jordan_example(2, 1, {});
  CHECK(single.g() == 1);
  CHECK((single.a(0) - jordan2()).norm() == 0.0);

  try {
    jordan_example(2, 2, {{-1.0, 1.0}});
    FAIL("expected DegenerateMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateMatrix);
  }
}

TEST_CASE("non-commuting systems are rejected unless built unchecked") {
  CMat a(2, 2), b(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  b << 1.0, 0.0, 1.0, 1.0;
  CHECK_THROWS_AS(MultiplierSystem(1, {a, b}), Error);
  const MultiplierSystem bad = MultiplierSystem::unchecked(1, {a, b});
  const RiemannMatrix om = fixtures::omega_g2();
  auto rng = RandomStreams(2).stream("bad");
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const LatticePoint l1 = random_lattice_point(rng, 2, 1);
    const LatticePoint l2 = random_lattice_point(rng, 2, 1);
    worst = std::max(worst, cocycle_residual(bad, om, l1, l2, complex_normal_vector(rng, 2)));
  }
  CHECK(worst > 0.1);
}

TEST_CASE("cocycle identity holds for valid systems") {
  const RiemannMatrix om2 = fixtures::omega_g2();
  const RiemannMatrix om3 = fixtures::omega_g3();
  const LatticePoint zero{IVec::Zero(2), IVec::Zero(2)};
  const MultiplierSystem j2 = jordan_example(2, 2, {{0.0, 0.0, 1.0}});
  CHECK(cocycle_residual(j2, om2, zero, zero, CVec::Zero(2)) == 0.0);

  auto rng = RandomStreams(3).stream("cocycle");
  for (int s = 1; s <= 2; ++s) {
    const MultiplierSystem a = jordan_example(2, 2, {{0.5, 0.5}}, s);
    const MultiplierSystem b = jordan_example(3, 3, {{0.0, 0.0, 1.0}, {2.0, -1.0}}, s);
    for (int t = 0; t < 50; ++t) {
      CHECK(cocycle_residual(a, om2, random_lattice_point(rng, 2, 2), random_lattice_point(rng, 2, 2),
                             0.3 * complex_normal_vector(rng, 2)) < 1e-10);
      CHECK(cocycle_residual(b, om3, random_lattice_point(rng, 3, 1), random_lattice_point(rng, 3, 1),
                             0.3 * complex_normal_vector(rng, 3)) < 1e-10);
    }
  }
}

TEST_CASE("dimension mismatches are reported") {
  const RiemannMatrix om = fixtures::omega_g2();
  const MultiplierSystem sys = MultiplierSystem::scalar(2, 1);
  const LatticePoint l{IVec::Zero(2), IVec::Zero(2)};
  try {
    multiplier(sys, om, l, CVec::Zero(3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}
