#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commring/ba_basis.hpp"
#include "commring/combinatorics.hpp"
#include "commring/error.hpp"
#include "commring/flows.hpp"
#include "commring/krichever.hpp"
#include "commring/restriction.hpp"
#include "commring/subvariety.hpp"
#include "commring/synthesis.hpp"
#include "fixtures.hpp"

using namespace commring;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [violated]");
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

MultiplierSystem jordan_g2(int s) { return jordan_example(2, 2, {{0.5, 0.5}}, s); }

MultiplierSystem system_for(int r, int s, int g) {
  if (r == 1) return MultiplierSystem::scalar(g, s);
  std::vector<std::vector<cplx>> polys(g - 1, std::vector<cplx>{0.5, 0.5});
  return jordan_example(r, g, polys, s);
}

RiemannMatrix omega_for(int g) {
  switch (g) {
    case 1:
      return fixtures::omega_g1();
    case 2:
      return fixtures::omega_g2();
    default:
      return fixtures::omega_g3();
  }
}

IVec random_small(std::mt19937_64& rng, int g, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IVec v(g);
  for (int j = 0; j < g; ++j) v(j) = d(rng);
  return v;
}

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  const int cases[5][3] = {{1, 1, 2}, {1, 2, 2}, {2, 1, 2}, {2, 2, 2}, {1, 1, 3}};
  auto rng = RandomStreams(fixtures::kPointSeed).stream("criterion1");
  for (const auto& c : cases) {
    const int r = c[0], s = c[1], g = c[2];
    const auto b = theta_basis(system_for(r, s, g), omega_for(g), rng);
    const int expected = r * static_cast<int>(std::pow(s, g));
    const double ratio = b.singular_values.minCoeff() / b.singular_values.maxCoeff();
    o.check(static_cast<int>(b.elements.size()) == expected && b.gram_rank == expected && ratio > 1e-8,
            "(r,s,g)=(" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(g) + ") elements " +
                std::to_string(b.elements.size()) + " rank " + std::to_string(b.gram_rank) + " sv ratio " +
                num(ratio));
  }
  const double t = seconds_since(t0);
  o.check(t < 60.0, "runtime " + num(t) + " s");
}

void criterion2(Outcome& o) {
  const auto t0 = Clock::now();
  const RiemannMatrix om = fixtures::omega_g2();
  for (int s : {1, 2}) {
    const MultiplierSystem sys = jordan_g2(s);
    auto rng = RandomStreams(fixtures::kPointSeed).stream("criterion2", s);
    const auto basis = theta_basis(sys, om, rng);
    double cocycle = 0.0;
    double quasi = 0.0;
    for (int i = 0; i < 100; ++i) {
      const CVec z = random_torus_point(om, rng);
      const LatticePoint l1{random_small(rng, 2, -2, 2), random_small(rng, 2, -2, 2)};
      const LatticePoint l2{random_small(rng, 2, -2, 2), random_small(rng, 2, -2, 2)};
      cocycle = std::max(cocycle, cocycle_residual(sys, om, l1, l2, z));
      const IVec m = random_small(rng, 2, -1, 1);
      const IVec n = random_small(rng, 2, -1, 1);
      for (const auto& th : basis.elements) {
        quasi = std::max(quasi, theta_quasi_periodicity_residual(th, z, m, n));
      }
    }
    o.check(cocycle < 1e-10, "s=" + std::to_string(s) + " cocycle " + num(cocycle));
    o.check(quasi < 1e-9, "s=" + std::to_string(s) + " quasi-periodicity " + num(quasi));
  }
  const double t = seconds_since(t0);
  o.check(t < 60.0, "runtime " + num(t) + " s");
}

void criterion3(Outcome& o) {
  const Divisor div = Divisor::standard(fixtures::omega_g1(), 1);
  const VectorTheta& th = div.theta();
  const cplx v = th.evaluate(CVec::Zero(1)).value[0];
  const double closed = std::pow(kPi, 0.25) / std::tgamma(0.75);
  o.check(std::abs(v - closed) < 1e-10, "theta(0) - pi^(1/4)/Gamma(3/4) = " + num(std::abs(v - closed)));
  const double h = 1e-4;
  double worst = 0.0;
  for (const cplx z0 : {cplx(0.13, 0.07), cplx(-0.31, 0.22), cplx(0.4, -0.15)}) {
    const CVec z = CVec::Constant(1, z0);
    const CVec step = CVec::Constant(1, h);
    const cplx f1 = th.evaluate(z, MultiIndex{1}).value[0];
    const cplx f2 = th.evaluate(z, MultiIndex{2}).value[0];
    const cplx fp = th.evaluate(z + step).value[0];
    const cplx fm = th.evaluate(z - step).value[0];
    const cplx f0 = th.evaluate(z).value[0];
    const cplx d1 = (fp - fm) / (2.0 * h);
    const cplx d2 = (fp - 2.0 * f0 + fm) / (h * h);
    worst = std::max({worst, std::abs(f1 - d1) / std::max(1.0, std::abs(f1)),
                      std::abs(f2 - d2) / std::max(1.0, std::abs(f2))});
  }
  o.check(worst < 1e-6, "derivatives vs centered differences " + num(worst));
}

void criterion4(Outcome& o) {
  const auto t0 = Clock::now();
  bool s_ok = true;
  for (int g = 1; g <= 5; ++g) {
    for (int n = 0; n <= 8; ++n) s_ok = s_ok && S(g, n) == S_brute_force(g, n);
  }
  o.check(s_ok, "S(g,n) = brute force for g<=5, n<=8");
  const auto sig2 = signature(2, 1, 1);
  const auto sig3 = signature(3, 1, 1);
  o.check(sig2.a == std::vector<std::int64_t>{1, 1}, "signature g=2 (" + std::to_string(sig2.a[0]) + "," +
                                                         std::to_string(sig2.a[1]) + ")");
  o.check(sig3.a == std::vector<std::int64_t>{1, 4, 1},
          "signature g=3 (" + std::to_string(sig3.a[0]) + "," + std::to_string(sig3.a[1]) + "," +
              std::to_string(sig3.a[2]) + ")");
  bool sums = true;
  bool identity = true;
  int tested = 0;
  for (int g = 1; g <= 5; ++g) {
    for (int r = 1; r <= 2; ++r) {
      for (int s = 1; s <= 3; ++s) {
        const auto sig = signature(g, r, s);
        std::int64_t want = r;
        for (int i = 0; i < g; ++i) want *= s;
        for (int i = 2; i <= g; ++i) want *= i;
        sums = sums && sig.total() == want;
        identity = identity && counting_identity_holds(sig, g, r, s, 2 * g + 5);
        ++tested;
      }
    }
  }
  o.check(sums, "sum a_i = r s^g g! over " + std::to_string(tested) + " (g,r,s)");
  o.check(identity, "counting identity exact for n <= 2g+5");
  const double t = seconds_since(t0);
  o.check(t < 10.0, "runtime " + num(t) + " s");
}

void criterion5(Outcome& o) {
  const auto t0 = Clock::now();
  const Divisor div = Divisor::standard(fixtures::omega_g3(), 1);
  const BABasis basis = assemble_basis(div, MultiplierSystem::scalar(3, 1), std::nullopt, fixtures::kBasisSeed);
  const auto sample = subvariety_sample({{div.theta(), fixtures::translate_g3()}}, div, 40, fixtures::kSampleSeed);
  double worst = 0.0;
  for (double r : sample.residuals) worst = std::max(worst, r);
  o.check(sample.points.size() == 40 && worst < 1e-10,
          std::to_string(sample.points.size()) + " points, max residual " + num(worst));
  for (int n : {2, 3}) {
    const auto rr = restriction_rank(basis, div, sample, n, 0);
    o.check(rr.rank == rr.expected, "n=" + std::to_string(n) + " rank " + std::to_string(rr.rank) + " expected F(1," +
                                        std::to_string(n) + ")=" + std::to_string(rr.expected));
  }
  const double t = seconds_since(t0);
  o.check(t < 300.0, "runtime " + num(t) + " s");
}

void criterion6(Outcome& o) {
  const auto t0 = Clock::now();
  const cplx tau(0.0, 1.0);
  const EllipticData e = weierstrass_from_theta(tau, 0.3, 6);
  const auto [l2, l3] = lame_pair(e);
  const double comm = op_norm(commutator(l2, l3));
  o.check(comm < 1e-8, "[L2,L3] op_norm " + num(comm));
  const CurveCoefficients cc = burchnall_chaundy(l2, l3);
  o.check(cc.variation < 1e-8 && cc.residual < 1e-8,
          "curve coefficients variation " + num(cc.variation) + " residual " + num(cc.residual));
  const double scale = std::max(std::abs(e.g2), 1.0);
  const double frozen = std::max(std::abs(cc.alpha + e.g2 / 4.0), std::abs(cc.beta + e.g3 / 4.0)) / scale;
  o.check(frozen < 1e-8, "alpha = -g2/4, beta = -g3/4 to " + num(frozen));
  double wp = e.calibration_error;
  CMat om(1, 1);
  om(0, 0) = tau;
  const Divisor div = Divisor::standard(validate_riemann_matrix(om), 1);
  for (const cplx x : {cplx(0.21, 0.1), cplx(-0.35, 0.27), cplx(0.44, -0.3), cplx(0.1, 0.45)}) {
    const cplx th = -div.at(CVec::Constant(1, x + e.shift), 2).log_derivative({2}) + e.c0;
    const cplx lat = lattice_wp(tau, x);
    wp = std::max(wp, std::abs(th - lat) / std::max(1.0, std::abs(lat)));
  }
  o.check(wp < 1e-8, "theta p vs lattice p " + num(wp));
  const OracleReport rep = oracle_synthesis_crosscheck(e);
  o.check(rep.match < 1e-6, "synthesized vs Lame L2 " + num(rep.match));
  const double t = seconds_since(t0);
  o.check(t < 60.0, "runtime " + num(t) + " s");
}

struct G2Setup {
  Divisor div = Divisor::standard(fixtures::omega_g2(), 1);
  BABasis basis = assemble_basis(div, MultiplierSystem::scalar(2, 1), std::nullopt, fixtures::kBasisSeed);
  std::vector<CVec> pts;

  G2Setup() {
    auto rng = RandomStreams(fixtures::kPointSeed).stream("g2-points");
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

void criterion7(Outcome& o) {
  const auto t0 = Clock::now();
  const G2Setup s;
  o.check(s.basis.elements.size() == 2, "N = " + std::to_string(s.basis.elements.size()));
  const auto l1 = MeromorphicFunction::log_derivative({2, 0});
  const auto l2 = MeromorphicFunction::log_derivative({1, 1});
  const SynthesisReport r1 = synthesize(s.problem(l1));
  const SynthesisReport r2 = synthesize(s.problem(l2));
  o.check(r1.order == 2, "order " + std::to_string(r1.order));
  o.check(r1.test_residual < 1e-6, "held-out residual " + num(r1.test_residual));
  const double comm = verify_commutativity(r1, r2);
  o.check(comm < 1e-6, "commutator " + num(comm));
  CollocationProblem other = s.problem(l1);
  other.z_train = s.slice(40, 80);
  const SynthesisReport r3 = synthesize(other);
  const double uniq = relative_difference(r1.op, r3.op);
  o.check(uniq < 1e-5, "disjoint-training uniqueness " + num(uniq));
  const double t = seconds_since(t0);
  o.check(t < 300.0, "runtime " + num(t) + " s");
}

struct G3Setup {
  Divisor div = Divisor::standard(fixtures::omega_g3(), 1);
  BABasis basis = assemble_basis(div, MultiplierSystem::scalar(3, 1), std::nullopt, fixtures::kBasisSeed);
  SubvarietySample sample =
      subvariety_sample({{div.theta(), fixtures::translate_g3()}}, div, 260, fixtures::kSampleSeed);

  std::vector<CVec> train() const { return {sample.points.begin(), sample.points.begin() + 130}; }
  std::vector<CVec> test() const { return {sample.points.begin() + 130, sample.points.end()}; }
};

void criterion8(Outcome& o) {
  const auto t0 = Clock::now();
  const G3Setup s;
  o.check(s.basis.elements.size() == 6, "N = " + std::to_string(s.basis.elements.size()));
  CollocationProblem p;
  p.basis = s.basis.elements;
  p.divisor = &s.div;
  p.z_train = s.train();
  p.z_test = s.test();
  p.frame = JetFrame::leading(3, 2);
  p.lambda = MeromorphicFunction::log_derivative({2, 0, 0});
  const SynthesisReport r1 = synthesize(p);
  p.lambda = MeromorphicFunction::log_derivative({1, 1, 0});
  const SynthesisReport r2 = synthesize(p);
  std::string rows;
  for (int k : r1.row_orders) rows += std::to_string(k);
  o.check(r1.op.n() == 6 && r1.op.vars() == 2, "6x6 in 2 variables");
  o.check(r1.order == 2, "order " + std::to_string(r1.order) + " (row orders " + rows + ")");
  o.check(r1.test_residual < 1e-5 && r2.test_residual < 1e-5,
          "held-out residuals " + num(r1.test_residual) + ", " + num(r2.test_residual));
  const double comm = verify_commutativity(r1, r2);
  o.check(comm < 1e-4, "commutator " + num(comm));
  const double t = seconds_since(t0);
  o.check(t < 1800.0, "runtime " + num(t) + " s");
}

void criterion9(Outcome& o) {
  const auto t0 = Clock::now();
  {
    const G2Setup s;
    LaxSetup ls;
    ls.basis = s.basis.elements;
    ls.divisor = &s.div;
    ls.lambda = MeromorphicFunction::log_derivative({2, 0});
    ls.z_train = s.slice(0, 40);
    ls.z_test = s.slice(80, 120);
    ls.k = 0;
    ls.h = 1e-3;
    const LaxReport lx = lax_experiment(ls);
    o.check(lx.residual_h < 1e-3, "Lax residual at h=1e-3 " + num(lx.residual_h));
    o.check(lx.ratio > 1.4 && lx.ratio < 2.6, "halving ratio " + num(lx.ratio));
    o.detail << "; Richardson residual " << num(lx.richardson);
  }
  {
    const G3Setup s;
    HierarchySetup hs;
    hs.basis = s.basis.elements;
    hs.divisor = &s.div;
    hs.z_train = s.train();
    hs.z_test = s.test();
    hs.k = 1;
    hs.m = {2, 0, 0};
    hs.h = 1e-3;
    hs.halving = true;
    const HierarchyReport hr = hierarchy_experiment(hs);
    o.check(hr.residual < 1e-3, "hierarchy bracket at h=1e-3 " + num(hr.residual));
    o.detail << "; bracket halving ratio " << num(hr.ratio) << ", Richardson residual " << num(hr.richardson);
  }
  const double t = seconds_since(t0);
  o.check(t < 1800.0, "runtime " + num(t) + " s");
}

void criterion10(Outcome& o) {
  const Divisor div = Divisor::standard(fixtures::omega_g3(), 1);
  const BABasis basis = assemble_basis(div, MultiplierSystem::scalar(3, 1), std::nullopt, fixtures::kBasisSeed);
  auto rng = RandomStreams(fixtures::kPointSeed).stream("criterion10");
  const auto pts = random_points_off_divisor(div, 100, rng, 5e-2);
  const VWSplit v = vw_split(basis, div, {div.theta(), fixtures::translate_g3()}, 4, pts);
  o.check(v.rank_v + v.rank_w == v.expected, "rank V " + std::to_string(v.rank_v) + " + rank W " +
                                                 std::to_string(v.rank_w) + " vs F(0,4)=" +
                                                 std::to_string(v.expected));
  o.check(v.rank_union == v.expected, "union rank " + std::to_string(v.rank_union));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks, one line per criterion"};
  std::vector<int> only;
  app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  const std::vector<std::function<void(Outcome&)>> checks{criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10};
  bool all = true;
  for (int i = 1; i <= 10; ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i) == only.end()) continue;
    Outcome o;
    try {
      checks[i - 1](o);
    } catch (const Error& e) {
      o.check(false, std::string("error ") + e.what());
    }
    all = all && o.pass;
    std::printf("criterion %2d: %s | %s\n", i, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
