#include "commring/subvariety.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "commring/error.hpp"
#include "commring/linalg.hpp"
#include "commring/random.hpp"

namespace commring {

namespace {

struct Eval {
  CVec f;
  CMat jac;  // k x g
};

Eval evaluate_system(const std::vector<TranslatedDivisor>& tr, const CVec& z) {
  const int k = static_cast<int>(tr.size());
  const int g = static_cast<int>(z.size());
  Eval e{CVec(k), CMat(k, g)};
  const CMat id = CMat::Identity(g, g);
  for (int j = 0; j < k; ++j) {
    const Jet t = tr[j].theta.evaluate_jet(z - tr[j].a, id, 1, 1e-15).front();
    e.f(j) = t.value();
    for (int i = 0; i < g; ++i) e.jac(j, i) = t[1 + i];
  }
  return e;
}

}  // namespace

SubvarietySample subvariety_sample(const std::vector<TranslatedDivisor>& translates, const Divisor& base, int count,
                                   std::uint64_t seed, const SubvarietyOptions& opts) {
  const int k = static_cast<int>(translates.size());
  const int g = base.g();
  const int k_max = opts.require_k_below_g_minus_1 ? g - 2 : g - 1;
  if (k < 1 || k > k_max) fail(ErrorCode::ConfigInvalid, "need 1 <= k < g-1 translates");
  auto rng = RandomStreams(seed).stream("subvariety");
  SubvarietySample out;
  const int budget = opts.oversampling * count;
  for (int attempt = 0; attempt < budget && static_cast<int>(out.points.size()) < count; ++attempt) {
    const CVec z0 = random_torus_point(base.omega(), rng);
    CMat d(g, k);
    for (int i = 0; i < k; ++i) {
      CVec col = complex_normal_vector(rng, g);
      d.col(i) = col / col.norm();
    }
    CVec u = CVec::Zero(k);
    bool converged = false;
    CVec z = z0;
    for (int it = 0; it < opts.max_newton; ++it) {
      z = z0 + d * u;
      const Eval e = evaluate_system(translates, z);
      if (e.f.cwiseAbs().maxCoeff() < 1e-14) {
        converged = true;
        break;
      }
      const CMat js = e.jac * d;
      const CVec step = js.fullPivLu().solve(e.f);
      if (!step.allFinite()) break;
      u -= step;
      if (u.norm() > 3.0) break;
    }
    if (!converged) continue;  // NewtonDivergence for this seed point; re-seed
    const CVec zr = base.omega().reduce(z);
    if (std::abs(base.theta_jet(zr, 0).value()) < opts.base_margin) continue;
    const Eval e = evaluate_system(translates, zr);
    const double res = e.f.cwiseAbs().maxCoeff();
    if (res >= opts.residual_tol) continue;
    const RVec sv = singular_values(e.jac * d);
    out.points.push_back(zr);
    out.residuals.push_back(res);
    out.conditions.push_back(sv(0) / sv(sv.size() - 1));
  }
  if (static_cast<int>(out.points.size()) < count) {
    fail(ErrorCode::InsufficientPoints, "only " + std::to_string(out.points.size()) + " of " + std::to_string(count) +
                                            " points converged");
  }
  return out;
}

void write_sample_csv(const SubvarietySample& sample, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
  if (sample.points.empty()) return;
  const int g = static_cast<int>(sample.points.front().size());
  for (int j = 0; j < g; ++j) f << "z" << j + 1 << "_re,z" << j + 1 << "_im,";
  f << "residual,jacobian_condition\n";
  f << std::setprecision(17);
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    for (int j = 0; j < g; ++j) f << sample.points[i](j).real() << ',' << sample.points[i](j).imag() << ',';
    f << sample.residuals[i] << ',' << sample.conditions[i] << '\n';
  }
}

}  // namespace commring
