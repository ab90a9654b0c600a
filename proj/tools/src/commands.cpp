#include "commands.hpp"

#include <algorithm>
#include <filesystem>

#include "commring/ba_basis.hpp"
#include "commring/combinatorics.hpp"
#include "commring/error.hpp"
#include "commring/flows.hpp"
#include "commring/krichever.hpp"
#include "commring/restriction.hpp"
#include "commring/subvariety.hpp"
#include "commring/synthesis.hpp"

namespace commring::cli {

namespace {

std::string str(double v) { return format_double(v); }
std::string str(int v) { return std::to_string(v); }
std::string str(std::int64_t v) { return std::to_string(v); }

std::string index_string(const MultiIndex& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "-" : "") + std::to_string(a[i]);
  return s;
}

RandomStreams streams(const Context& ctx) { return RandomStreams(ctx.cfg.seed); }

std::vector<LambdaSpec> lambda_specs(const ExperimentConfig& cfg) {
  if (!cfg.lambdas.empty()) return cfg.lambdas;
  std::vector<LambdaSpec> out;
  LambdaSpec a;
  a.m = MultiIndex(cfg.g, 0);
  a.m[0] = 2;
  out.push_back(a);
  if (cfg.g - cfg.k >= 2) {
    LambdaSpec b;
    b.m = MultiIndex(cfg.g, 0);
    b.m[0] = 1;
    b.m[1] = 1;
    out.push_back(b);
  }
  return out;
}

MeromorphicFunction make_lambda(const LambdaSpec& spec, const Divisor& div, std::mt19937_64& rng) {
  MeromorphicFunction f = MeromorphicFunction::constant(1.0);
  if (spec.kind == "log_derivative") {
    f = MeromorphicFunction::log_derivative(spec.m);
  } else if (spec.kind == "theta_quotient") {
    int size = 1;
    for (int j = 0; j < div.g(); ++j) size *= spec.pole_order * div.degree();
    CVec coeffs = complex_normal_vector(rng, size);
    if (!spec.coeffs.empty()) {
      if (static_cast<int>(spec.coeffs.size()) != size) {
        fail(ErrorCode::ConfigInvalid, "theta_quotient needs (n s)^g = " + std::to_string(size) + " coefficients");
      }
      coeffs = Eigen::Map<const CVec>(spec.coeffs.data(), size);
    }
    f = meromorphic_function(div, spec.pole_order, coeffs);
  }
  return MeromorphicFunction::scaled(spec.scale, f);
}

/// Basis, divisor and disjoint train/test samples shared by the operator subcommands.
struct Pipeline {
  RiemannMatrix omega;
  Divisor div;
  MultiplierSystem sys;
  BABasis basis;
  std::vector<CVec> train;
  std::vector<CVec> test;
  JetFrame frame;
  std::vector<MeromorphicFunction> lambdas;

  explicit Pipeline(const Context& ctx)
      : omega(riemann_matrix(ctx.cfg)),
        div(Divisor::standard(omega, ctx.cfg.s)),
        sys(multiplier_system(ctx.cfg)),
        basis(assemble_basis(div, sys, ctx.cfg.c, ctx.cfg.seed)) {
    const auto& cfg = ctx.cfg;
    const int total = cfg.samples.train + cfg.samples.test;
    std::vector<CVec> pts;
    if (cfg.k == 0) {
      auto rng = streams(ctx).stream("points");
      pts = random_points_off_divisor(div, total, rng, cfg.samples.margin);
      frame = JetFrame::full(cfg.g);
    } else {
      std::vector<TranslatedDivisor> tr;
      for (const auto& a : cfg.translations) tr.push_back({div.theta(), a});
      SubvarietyOptions so;
      so.base_margin = cfg.samples.margin;
      pts = subvariety_sample(tr, div, total, streams(ctx).stream("subvariety")(), so).points;
      frame = JetFrame::leading(cfg.g, cfg.g - cfg.k);
    }
    train.assign(pts.begin(), pts.begin() + cfg.samples.train);
    test.assign(pts.begin() + cfg.samples.train, pts.end());
    auto rng = streams(ctx).stream("lambda");
    for (const auto& spec : lambda_specs(cfg)) lambdas.push_back(make_lambda(spec, div, rng));
  }

  SynthesisOptions options(const Context& ctx) const {
    SynthesisOptions o;
    o.jet_order = ctx.cfg.jet_order;
    o.jobs = ctx.jobs;
    return o;
  }

  CollocationProblem problem(const Context& ctx, std::size_t i) const {
    CollocationProblem p;
    p.basis = basis.elements;
    p.divisor = &div;
    p.lambda = lambdas[i];
    p.z_train = train;
    p.z_test = test;
    p.frame = frame;
    p.options = options(ctx);
    return p;
  }
};

void theta_eval(const Context& ctx, Report& rep) {
  const RiemannMatrix om = riemann_matrix(ctx.cfg);
  auto rng = streams(ctx).stream("theta");
  const ThetaBasis basis = theta_basis(multiplier_system(ctx.cfg), om, rng, ctx.cfg.rank_tol);
  const int g = om.g();
  const double tol = tolerance(ctx.cfg, "theta_error");
  CsvTable csv({"point", "element", "deriv", "component", "re", "im", "error_bound"});
  double worst = 0.0;
  std::vector<MultiIndex> derivs{MultiIndex(g, 0)};
  for (int j = 0; j < g; ++j) derivs.push_back(unit_index(g, j));
  for (int p = 0; p < ctx.cfg.samples.eval_points; ++p) {
    const CVec z = random_torus_point(om, rng);
    for (std::size_t e = 0; e < basis.elements.size(); ++e) {
      for (const auto& d : derivs) {
        const ThetaValue v = basis.elements[e].evaluate(z, d, 0.01 * tol);
        worst = std::max(worst, v.error_bound);
        for (Eigen::Index c = 0; c < v.value.size(); ++c) {
          csv.add({str(p), str(static_cast<int>(e)), index_string(d), str(static_cast<int>(c)), str(v.value(c).real()),
                   str(v.value(c).imag()), str(v.error_bound)});
        }
      }
    }
  }
  csv.write(ctx.path("theta_eval.csv"));
  rep.equal("basis size r s^g", static_cast<double>(basis.elements.size()),
            static_cast<double>(basis.elements.empty() ? 0 : basis.elements.front().space().dimension()));
  rep.equal("evaluation gram rank", basis.gram_rank, static_cast<double>(basis.elements.size()));
  rep.less("certified truncation error", "theta_error", worst, tol);
}

IVec random_small(std::mt19937_64& rng, int g, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IVec v(g);
  for (int j = 0; j < g; ++j) v(j) = d(rng);
  return v;
}

void theta_check(const Context& ctx, Report& rep) {
  const RiemannMatrix om = riemann_matrix(ctx.cfg);
  const MultiplierSystem sys = multiplier_system(ctx.cfg);
  auto rng = streams(ctx).stream("theta-check");
  const ThetaBasis basis = theta_basis(sys, om, rng, ctx.cfg.rank_tol);
  const int g = om.g();
  CsvTable csv({"sample", "cocycle", "quasi_periodicity"});
  double cocycle = 0.0;
  double quasi = 0.0;
  for (int i = 0; i < ctx.cfg.samples.check_points; ++i) {
    const CVec z = random_torus_point(om, rng);
    const LatticePoint l1{random_small(rng, g, -2, 2), random_small(rng, g, -2, 2)};
    const LatticePoint l2{random_small(rng, g, -2, 2), random_small(rng, g, -2, 2)};
    const double c = cocycle_residual(sys, om, l1, l2, z);
    const IVec m = random_small(rng, g, -1, 1);
    const IVec n = random_small(rng, g, -1, 1);
    double q = 0.0;
    for (const auto& th : basis.elements) q = std::max(q, theta_quasi_periodicity_residual(th, z, m, n));
    csv.add({str(i), str(c), str(q)});
    cocycle = std::max(cocycle, c);
    quasi = std::max(quasi, q);
  }
  csv.write(ctx.path("theta_check.csv"));
  rep.less("max cocycle residual", "cocycle", cocycle, tolerance(ctx.cfg, "cocycle"));
  rep.less("max quasi-periodicity residual", "quasi_periodicity", quasi, tolerance(ctx.cfg, "quasi_periodicity"));
}

void basis_cmd(const Context& ctx, Report& rep) {
  const RiemannMatrix om = riemann_matrix(ctx.cfg);
  const Divisor div = Divisor::standard(om, ctx.cfg.s);
  BasisOptions bo;
  bo.rank_tol = ctx.cfg.rank_tol;
  const BABasis b = assemble_basis(div, multiplier_system(ctx.cfg), ctx.cfg.c, ctx.cfg.seed, bo);
  CsvTable csv({"n", "witness_rank", "expected_F0"});
  for (std::size_t i = 0; i < b.witness_ranks.size(); ++i) {
    csv.add({str(static_cast<int>(i + 1)), str(b.witness_ranks[i]), str(b.expected[i])});
    rep.equal("witness rank at level " + std::to_string(i + 1), b.witness_ranks[i],
              static_cast<double>(b.expected[i]));
  }
  csv.write(ctx.path("basis.csv"));
  CsvTable levels({"element", "level"});
  const auto lv = b.levels();
  for (std::size_t i = 0; i < lv.size(); ++i) levels.add({str(static_cast<int>(i)), str(lv[i])});
  levels.write(ctx.path("basis_levels.csv"));
  std::string c;
  for (Eigen::Index j = 0; j < b.c.size(); ++j) {
    const cplx v = b.c(j);
    c += (j ? " " : "") + str(v.real()) + (v.imag() < 0 ? "-" : "+") + str(std::abs(v.imag())) + "i";
  }
  rep.note("elements", std::to_string(b.elements.size()));
  rep.note("c", c);
  rep.note("attempts", std::to_string(b.attempts));
}

void sample_subvariety(const Context& ctx, Report& rep) {
  if (ctx.cfg.k < 1) fail(ErrorCode::ConfigInvalid, "sample-subvariety needs k >= 1");
  const RiemannMatrix om = riemann_matrix(ctx.cfg);
  const Divisor div = Divisor::standard(om, ctx.cfg.s);
  std::vector<TranslatedDivisor> tr;
  for (const auto& a : ctx.cfg.translations) tr.push_back({div.theta(), a});
  SubvarietyOptions so;
  so.residual_tol = tolerance(ctx.cfg, "subvariety");
  so.base_margin = ctx.cfg.samples.margin;
  const int count = ctx.cfg.samples.train + ctx.cfg.samples.test;
  const SubvarietySample s = subvariety_sample(tr, div, count, streams(ctx).stream("subvariety")(), so);
  write_sample_csv(s, ctx.path("subvariety.csv"));
  double worst = 0.0;
  for (double r : s.residuals) worst = std::max(worst, r);
  rep.equal("converged points", static_cast<double>(s.points.size()), count);
  rep.less("max residual on Y^k", "subvariety", worst, tolerance(ctx.cfg, "subvariety"));
}

void synth(const Context& ctx, Report& rep) {
  const Pipeline p(ctx);
  CsvTable csv({"lambda", "order", "row_orders", "train_residual", "test_residual", "condition", "escalated"});
  for (std::size_t i = 0; i < p.lambdas.size(); ++i) {
    const SynthesisReport r = synthesize(p.problem(ctx, i));
    std::string rows;
    for (int o : r.row_orders) rows += std::to_string(o);
    csv.add({str(static_cast<int>(i)), str(r.order), rows, str(r.train_residual), str(r.test_residual),
             str(r.condition), r.escalated ? "1" : "0"});
    write_operator(r.op, ctx.path("operator_" + std::to_string(i) + ".txt"));
    rep.less("held-out residual lambda " + std::to_string(i), "residual", r.test_residual,
             tolerance(ctx.cfg, "residual"));
    for (const auto& line : r.log) rep.note("lambda " + std::to_string(i) + " log", line);
  }
  csv.write(ctx.path("synth.csv"));
}

void commute(const Context& ctx, Report& rep) {
  const Pipeline p(ctx);
  std::vector<SynthesisReport> reps;
  for (std::size_t i = 0; i < p.lambdas.size(); ++i) reps.push_back(synthesize(p.problem(ctx, i)));
  CsvTable csv({"i", "j", "commutator"});
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      const double c = verify_commutativity(reps[i], reps[j]);
      csv.add({str(static_cast<int>(i)), str(static_cast<int>(j)), str(c)});
      if (i < j) {
        rep.less("commutator " + std::to_string(i) + "," + std::to_string(j), "commutator", c,
                 tolerance(ctx.cfg, "commutator"));
      }
    }
  }
  csv.write(ctx.path("commute.csv"));
  if (reps.size() < 2) rep.note("pairs", "only one lambda configured");
}

void lax(const Context& ctx, Report& rep) {
  const Pipeline p(ctx);
  LaxSetup ls;
  ls.basis = p.basis.elements;
  ls.divisor = &p.div;
  ls.lambda = p.lambdas.front();
  ls.z_train = p.train;
  ls.z_test = p.test;
  ls.k = ctx.cfg.k;
  ls.h = ctx.cfg.time.h;
  ls.options = p.options(ctx);
  const LaxReport lx = lax_experiment(ls);
  CsvTable csv({"h", "residual"});
  csv.add({str(ls.h), str(lx.residual_h)});
  csv.add({str(ls.h / 2.0), str(lx.residual_h2)});
  csv.write(ctx.path("lax.csv"));
  write_operator(lx.t.op, ctx.path("time_operator.txt"));
  rep.less("Lax residual at h", "lax", lx.residual_h, tolerance(ctx.cfg, "lax"));
  rep.within("halving ratio", "halving", lx.ratio, tolerance(ctx.cfg, "halving_low"),
             tolerance(ctx.cfg, "halving_high"));
  rep.note("richardson residual", str(lx.richardson));
}

void hierarchy(const Context& ctx, Report& rep) {
  if (ctx.cfg.k < 1) fail(ErrorCode::ConfigInvalid, "hierarchy needs k >= 1");
  const Pipeline p(ctx);
  HierarchySetup hs;
  hs.basis = p.basis.elements;
  hs.divisor = &p.div;
  hs.z_train = p.train;
  hs.z_test = p.test;
  hs.k = ctx.cfg.k;
  hs.m = ctx.cfg.time.m;
  if (hs.m.empty()) {
    hs.m = MultiIndex(ctx.cfg.g, 0);
    hs.m[0] = 2;
  }
  hs.h = ctx.cfg.time.h;
  hs.halving = true;
  hs.options = p.options(ctx);
  const HierarchyReport hr = hierarchy_experiment(hs);
  CsvTable csv({"h", "residual"});
  csv.add({str(hs.h), str(hr.residual)});
  csv.add({str(hs.h / 2.0), str(hr.residual_h2)});
  csv.write(ctx.path("hierarchy.csv"));
  rep.less("zero-curvature residual at h", "hierarchy", hr.residual, tolerance(ctx.cfg, "hierarchy"));
  rep.note("halving ratio", str(hr.ratio));
  rep.note("richardson residual", str(hr.richardson));
}

void oracle(const Context& ctx, Report& rep) {
  const auto& ec = ctx.cfg.elliptic;
  const EllipticData e = weierstrass_from_theta(ec.tau, ec.x0, ec.jet_order, tolerance(ctx.cfg, "elliptic"));
  const auto [l2, l3] = lame_pair(e);
  write_operator(l2, ctx.path("lame_l2.txt"));
  write_operator(l3, ctx.path("lame_l3.txt"));
  const double comm = op_norm(commutator(l2, l3));
  const CurveCoefficients cc = burchnall_chaundy(l2, l3);
  const OracleReport orc = oracle_synthesis_crosscheck(e, 24, ctx.cfg.seed);
  write_operator(orc.synthesized, ctx.path("oracle_synthesized.txt"));
  const double tol = tolerance(ctx.cfg, "elliptic");
  rep.less("calibration theta p vs lattice p", "elliptic", e.calibration_error, tol);
  rep.less("p differential equation", "elliptic", wp_equation_residual(e), tol);
  rep.less("[L2, L3] op_norm", "elliptic", comm, tol);
  rep.less("curve coefficient variation", "elliptic", cc.variation, tol);
  rep.less("synthesized vs Lame L2", "oracle", orc.match, tolerance(ctx.cfg, "oracle"));
  rep.less("synthesized commutator with L3", "oracle", orc.commutator, tolerance(ctx.cfg, "oracle"));
  CsvTable csv({"quantity", "re", "im"});
  csv.add({"g2", str(e.g2.real()), str(e.g2.imag())});
  csv.add({"g3", str(e.g3.real()), str(e.g3.imag())});
  csv.add({"alpha", str(cc.alpha.real()), str(cc.alpha.imag())});
  csv.add({"beta", str(cc.beta.real()), str(cc.beta.imag())});
  csv.add({"c0", str(e.c0.real()), str(e.c0.imag())});
  csv.write(ctx.path("oracle.csv"));
}

void dims(const Context& ctx, Report& rep) {
  const int g = ctx.cfg.g, r = ctx.cfg.r, s = ctx.cfg.s;
  const int n_max = 2 * g + 5;
  CsvTable table({"table", "j", "n", "value"});
  for (int n = 0; n <= n_max; ++n) table.add({"S", str(g), str(n), str(S(g, n))});
  for (int j = 0; j < std::max(g - 1, 1); ++j) {
    for (int n = 1; n <= n_max; ++n) table.add({"F", str(j), str(n), str(F(j, n, r, s, g))});
  }
  table.write(ctx.path("dims.csv"));
  const LevelSignature sig = signature(g, r, s);
  CsvTable sc({"level", "count"});
  std::string text;
  for (std::size_t i = 0; i < sig.a.size(); ++i) {
    sc.add({str(static_cast<int>(i + 1)), str(sig.a[i])});
    text += (i ? "," : "(") + std::to_string(sig.a[i]);
  }
  sc.write(ctx.path("signature.csv"));
  std::int64_t want = r;
  for (int i = 0; i < g; ++i) want *= s;
  for (int i = 2; i <= g; ++i) want *= i;
  rep.equal("signature total r s^g g!", static_cast<double>(sig.total()), static_cast<double>(want));
  rep.equal("counting identity for n <= 2g+5", counting_identity_holds(sig, g, r, s, n_max) ? 1.0 : 0.0, 1.0);
  rep.note("signature", text + ")");
  rep.note("sum", std::to_string(sig.total()));
}

}  // namespace

std::string Context::path(const std::string& file) const { return (std::filesystem::path(out_dir) / file).string(); }

const std::vector<std::pair<std::string, std::string>>& command_descriptions() {
  static const std::vector<std::pair<std::string, std::string>> d{
      {"theta-eval", "Tabulate theta basis values and first derivatives"},
      {"theta-check", "Cocycle and quasi-periodicity residuals"},
      {"basis", "Assemble the homogeneous generators and their rank witnesses"},
      {"sample-subvariety", "Newton samples on the intersection of translates"},
      {"synth", "Synthesize L(lambda) for every configured eigenvalue"},
      {"commute", "Pairwise commutator residuals of the synthesized operators"},
      {"lax", "Lax equation residual with step halving"},
      {"hierarchy", "Zero-curvature residual of a deformed time pair"},
      {"oracle", "Elliptic Lame pair against the synthesized operator"},
      {"dims", "Operator counts, section dimensions and the level signature"},
  };
  return d;
}

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> c{
      {"theta-eval", theta_eval}, {"theta-check", theta_check}, {"basis", basis_cmd},
      {"sample-subvariety", sample_subvariety}, {"synth", synth}, {"commute", commute},
      {"lax", lax}, {"hierarchy", hierarchy}, {"oracle", oracle}, {"dims", dims},
  };
  return c;
}

}  // namespace commring::cli
