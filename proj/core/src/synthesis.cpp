#include "commring/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "commring/error.hpp"
#include "commring/linalg.hpp"

namespace commring {

namespace {

struct Column {
  int j;
  MultiIndex alpha;
};

std::vector<Column> columns_for(const std::vector<int>& levels, int i, int shift, int ord, int vars) {
  std::vector<Column> cols;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    for (const auto& a : indices_up_to(vars, ord)) {
      if (levels[j] + order(a) <= levels[i] + shift) cols.push_back({static_cast<int>(j), a});
    }
  }
  return cols;
}

/// dmat[b](row, col): Taylor coefficient at y^b of d^alpha Phi_j, rows ordered (point, component).
std::vector<CMat> derivative_blocks(const FitData& data, const std::vector<Column>& cols, const MonomialTable& jt) {
  const std::size_t npts = data.phi.size();
  const int r = static_cast<int>(data.phi.front().front().size());
  std::vector<CMat> out(jt.size(), CMat(static_cast<Eigen::Index>(npts) * r, static_cast<Eigen::Index>(cols.size())));
  for (int b = 0; b < jt.size(); ++b) {
    const MultiIndex& beta = jt.index(b);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const MultiIndex ab = add(cols[c].alpha, beta);
      const double scale = factorial(ab) / jt.factorial(b);
      for (std::size_t pt = 0; pt < npts; ++pt) {
        const auto& f = data.phi[pt][cols[c].j];
        for (int p = 0; p < r; ++p) {
          const int idx = f[p].table().find(ab);
          if (idx < 0) fail(ErrorCode::InsufficientJetOrder, "basis jets too short for the requested fit");
          out[b](static_cast<Eigen::Index>(pt) * r + p, static_cast<Eigen::Index>(c)) = f[p][idx] * scale;
        }
      }
    }
  }
  return out;
}

CMat target_block(const FitData& data, int i, const MonomialTable& jt) {
  const std::size_t npts = data.target.size();
  const int r = static_cast<int>(data.target.front()[i].size());
  CMat t(static_cast<Eigen::Index>(npts) * r, jt.size());
  for (std::size_t pt = 0; pt < npts; ++pt) {
    for (int p = 0; p < r; ++p) {
      const Jet& f = data.target[pt][i][p];
      if (f.order() < jt.order()) fail(ErrorCode::InsufficientJetOrder, "target jets too short");
      for (int d = 0; d < jt.size(); ++d) t(static_cast<Eigen::Index>(pt) * r + p, d) = f[d];
    }
  }
  return t;
}

/// Residual matrix (rows x jet monomials) of a coefficient table.
CMat row_residual(const std::vector<CMat>& dmat, const CMat& target, const CMat& coef, const MonomialTable& jt) {
  CMat res = -target;
  for (const auto& pr : jt.products()) res.col(pr.c) += dmat[pr.b] * coef.col(pr.a);
  return res;
}

struct RowFit {
  int order = 0;
  std::vector<Column> cols;
  CMat coef;
  double train_num = 0.0;
  double train_den = 0.0;
  double test_num = 0.0;
  double test_den = 0.0;
  double condition = 0.0;
  double test_rel() const { return test_num / (test_den > 0.0 ? test_den : 1.0); }
};

}  // namespace

SynthesisReport fit_operator(const FitData& train, const FitData& test, const std::vector<int>& levels,
                             const FitOptions& opts) {
  if (train.phi.empty() || test.phi.empty()) fail(ErrorCode::InsufficientPoints, "empty training or test set");
  const int n = static_cast<int>(levels.size());
  const int r = static_cast<int>(train.phi.front().front().size());
  const int vars = train.phi.front().front().front().vars();
  const auto jt = MonomialTable::get(vars, opts.jet_order);
  SynthesisReport rep;
  std::vector<RowFit> fits(n);
  for (int i = 0; i < n; ++i) {
    const CMat t_train = target_block(train, i, *jt);
    const CMat t_test = target_block(test, i, *jt);
    RowFit best;
    bool have = false;
    for (int ord = opts.min_order; ord <= opts.max_order; ++ord) {
      RowFit fit;
      fit.order = ord;
      fit.cols = columns_for(levels, i, opts.shift, ord, vars);
      if (have && fit.cols.size() == best.cols.size()) continue;  // no new columns at this order
      const auto rows = static_cast<std::size_t>(train.phi.size()) * r;
      if (rows < 2 * fit.cols.size()) {
        fail(ErrorCode::InsufficientPoints, "need " + std::to_string(2 * fit.cols.size()) + " training rows, have " +
                                                std::to_string(rows));
      }
      const auto d_train = derivative_blocks(train, fit.cols, *jt);
      const auto d_test = derivative_blocks(test, fit.cols, *jt);
      fit.coef = CMat::Zero(static_cast<Eigen::Index>(fit.cols.size()), jt->size());
      if (!fit.cols.empty()) {
        const ScaledLeastSquares ls(d_train[0]);
        fit.condition = ls.condition();
        for (int c = 0; c < jt->size(); ++c) {
          CVec rhs = t_train.col(c);
          for (const auto& pr : jt->products()) {
            if (pr.c == c && pr.b != 0) rhs -= d_train[pr.b] * fit.coef.col(pr.a);
          }
          fit.coef.col(c) = ls.solve(rhs);
        }
      }
      const CMat r_train = row_residual(d_train, t_train, fit.coef, *jt);
      const CMat r_test = row_residual(d_test, t_test, fit.coef, *jt);
      fit.train_num = r_train.norm();
      fit.train_den = t_train.norm();
      fit.test_num = r_test.norm();
      fit.test_den = t_test.norm();
      std::ostringstream msg;
      msg << "row " << i << " order " << ord << ": columns " << fit.cols.size() << ", condition " << fit.condition
          << ", held-out residual " << fit.test_rel();
      rep.log.push_back(msg.str());
      const bool ill = !(fit.condition <= opts.ill_conditioned);
      if (ill) {
        if (ord < opts.max_order) {
          rep.log.push_back("row " + std::to_string(i) + ": ill-conditioned, escalating");
          rep.escalated = true;
          continue;
        }
        if (!have) {
          std::ostringstream err;
          err << "row " << i << " condition " << fit.condition << " exceeds " << opts.ill_conditioned;
          fail(ErrorCode::IllConditioned, err.str());
        }
        break;
      }
      if (!have || fit.test_rel() < best.test_rel()) {
        best = fit;
        have = true;
      }
      if (fit.test_rel() <= opts.escalate_above) break;
      if (ord < opts.max_order) rep.escalated = true;
    }
    if (!have) fail(ErrorCode::IllConditioned, "row " + std::to_string(i) + " could not be fitted");
    fits[i] = std::move(best);
  }
  int max_ord = 0;
  for (const auto& f : fits) {
    int eff = 0;
    for (const auto& c : f.cols) eff = std::max(eff, order(c.alpha));
    max_ord = std::max(max_ord, eff);
  }
  MatrixDiffOp op(n, vars, max_ord, opts.jet_order);
  double tn = 0.0, td = 0.0, sn = 0.0, sd = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& f = fits[i];
    for (std::size_t c = 0; c < f.cols.size(); ++c) {
      const int ia = op.derivs().find(f.cols[c].alpha);
      for (int d = 0; d < jt->size(); ++d) op.coeff(ia, d)(i, f.cols[c].j) = f.coef(static_cast<Eigen::Index>(c), d);
    }
    int eff = 0;
    for (const auto& c : f.cols) eff = std::max(eff, order(c.alpha));
    rep.row_orders.push_back(eff);
    tn += f.train_num * f.train_num;
    td += f.train_den * f.train_den;
    sn += f.test_num * f.test_num;
    sd += f.test_den * f.test_den;
    rep.condition = std::max(rep.condition, f.condition);
  }
  rep.op = std::move(op);
  rep.order = max_ord;
  rep.train_residual = std::sqrt(tn) / (td > 0.0 ? std::sqrt(td) : 1.0);
  rep.test_residual = std::sqrt(sn) / (sd > 0.0 ? std::sqrt(sd) : 1.0);
  return rep;
}

double fit_residual(const MatrixDiffOp& op, const FitData& data) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t pt = 0; pt < data.phi.size(); ++pt) {
    const auto lphi = apply(op, data.phi[pt]);
    for (std::size_t i = 0; i < lphi.size(); ++i) {
      for (std::size_t p = 0; p < lphi[i].size(); ++p) {
        const Jet& t = data.target[pt][i][p];
        const int k = std::min(lphi[i][p].order(), t.order());
        const Jet diff = lphi[i][p].truncated(k) - t.truncated(k);
        num += diff.coeffs().squaredNorm();
        den += t.truncated(k).coeffs().squaredNorm();
      }
    }
  }
  return std::sqrt(num) / (den > 0.0 ? std::sqrt(den) : 1.0);
}

FitData eigen_fit_data(const std::vector<PointJets>& pts, const MeromorphicFunction& lambda, int jet_order) {
  FitData d;
  for (const auto& p : pts) {
    d.phi.push_back(p.phi);
    const cplx lam = lambda.evaluate(p.divisor);
    std::vector<std::vector<Jet>> t;
    for (const auto& comps : p.phi) {
      std::vector<Jet> row;
      for (const auto& f : comps) row.push_back(f.truncated(jet_order) * lam);
      t.push_back(std::move(row));
    }
    d.target.push_back(std::move(t));
  }
  return d;
}

namespace {

void check_disjoint(const std::vector<CVec>& a, const std::vector<CVec>& b) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x == y) fail(ErrorCode::ConfigInvalid, "training and test points overlap");
    }
  }
}

int level_span(const std::vector<BAElement>& basis) {
  int lo = std::numeric_limits<int>::max();
  int hi = 0;
  for (const auto& e : basis) {
    lo = std::min(lo, e.level);
    hi = std::max(hi, e.level);
  }
  return hi - lo;
}

std::vector<int> levels_of(const std::vector<BAElement>& basis) {
  std::vector<int> lv;
  for (const auto& e : basis) lv.push_back(e.level);
  return lv;
}

}  // namespace

SynthesisReport synthesize(const CollocationProblem& pr) {
  if (!pr.divisor) fail(ErrorCode::ConfigInvalid, "collocation problem without a divisor");
  check_disjoint(pr.z_train, pr.z_test);
  const int n = pr.order < 0 ? pr.lambda.pole_order() : pr.order;
  const int extra = pr.options.max_extra_order < 0 ? level_span(pr.basis) : pr.options.max_extra_order;
  const int max_order = n + extra;
  const int jo = pr.options.jet_order < 0 ? max_order + 1 : pr.options.jet_order;
  const int lo = pr.lambda.required_order();
  const auto train = compute_point_jets(pr.basis, *pr.divisor, pr.z_train, pr.frame, max_order + jo, lo,
                                        pr.options.jobs);
  const auto test = compute_point_jets(pr.basis, *pr.divisor, pr.z_test, pr.frame, max_order + jo, lo,
                                       pr.options.jobs);
  FitOptions fo;
  fo.shift = n;
  fo.min_order = n;
  fo.max_order = max_order;
  fo.jet_order = jo;
  fo.escalate_above = pr.options.escalate_above;
  return fit_operator(eigen_fit_data(train, pr.lambda, jo), eigen_fit_data(test, pr.lambda, jo), levels_of(pr.basis),
                      fo);
}

double relative_commutator(const MatrixDiffOp& a, const MatrixDiffOp& b) {
  const double na = op_norm(a);
  const double nb = op_norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return op_norm(commutator(a, b)) / (na * nb);
}

double verify_commutativity(const SynthesisReport& a, const SynthesisReport& b) {
  return relative_commutator(a.op, b.op);
}

double relative_difference(const MatrixDiffOp& a, const MatrixDiffOp& b, int jet_order) {
  const int jo = jet_order < 0 ? std::min(a.jet_order(), b.jet_order()) : jet_order;
  const MatrixDiffOp at = a.with_jet_order(jo);
  const MatrixDiffOp bt = b.with_jet_order(jo);
  const double den = std::max(op_norm(at), op_norm(bt));
  return den > 0.0 ? op_norm(at - bt) / den : 0.0;
}

SynthesisReport time_operator(const TimeProblem& pr) {
  if (!pr.divisor) fail(ErrorCode::ConfigInvalid, "time problem without a divisor");
  check_disjoint(pr.z_train, pr.z_test);
  const int nv = pr.frame.vars();
  if (pr.time_var < 0 || pr.time_var >= nv || pr.op_vars < 1 || pr.op_vars > nv) {
    fail(ErrorCode::IndexOutOfRange, "time variable or operator variable count");
  }
  if (pr.time_var < pr.op_vars && pr.op_vars != nv) {
    fail(ErrorCode::ShapeMismatch, "an operator-variable time requires all frame variables to be operator variables");
  }
  const int jo = pr.options.jet_order < 0 ? pr.order_bound + 1 : pr.options.jet_order;
  const int k = pr.order_bound + jo + 1;
  std::vector<int> keep;
  for (int v = 0; v < pr.op_vars; ++v) keep.push_back(v);
  auto build = [&](const std::vector<CVec>& pts) {
    const auto pj = compute_point_jets(pr.basis, *pr.divisor, pts, pr.frame, k, 1, pr.options.jobs);
    FitData d;
    for (const auto& p : pj) {
      std::vector<std::vector<Jet>> design;
      std::vector<std::vector<Jet>> target;
      for (const auto& comps : p.phi) {
        std::vector<Jet> drow;
        std::vector<Jet> trow;
        for (const auto& f : comps) {
          const Jet dt = jet_derive(f, pr.time_var);
          if (pr.time_var < pr.op_vars) {
            drow.push_back(f);
            trow.push_back(dt.truncated(jo));
          } else {
            drow.push_back(jet_restrict(f, keep));
            trow.push_back(jet_restrict(dt, keep).truncated(jo));
          }
        }
        design.push_back(std::move(drow));
        target.push_back(std::move(trow));
      }
      d.phi.push_back(std::move(design));
      d.target.push_back(std::move(target));
    }
    return d;
  };
  FitOptions fo;
  fo.shift = pr.shift;
  fo.min_order = std::min(pr.shift, pr.order_bound);
  fo.max_order = pr.order_bound;
  fo.jet_order = jo;
  fo.escalate_above = pr.options.escalate_above;
  return fit_operator(build(pr.z_train), build(pr.z_test), levels_of(pr.basis), fo);
}

double lax_residual(const MatrixDiffOp& l0, const MatrixDiffOp& lh, const MatrixDiffOp& t, double h) {
  const MatrixDiffOp bracket = commutator(t, l0).with_jet_order(0);
  const MatrixDiffOp fd = (1.0 / h) * (lh.with_jet_order(0) - l0.with_jet_order(0));
  const double den = op_norm_at(bracket, 0);
  const double num = op_norm_at(fd - bracket, 0);
  if (den == 0.0) return num;
  return num / den;
}

double zero_curvature_residual(const MatrixDiffOp& la, const MatrixDiffOp& la_shift_b, const MatrixDiffOp& lb,
                               const MatrixDiffOp& lb_shift_a, double h) {
  const MatrixDiffOp db_la = (1.0 / h) * (la_shift_b.with_jet_order(0) - la.with_jet_order(0));
  const MatrixDiffOp da_lb = (1.0 / h) * (lb_shift_a.with_jet_order(0) - lb.with_jet_order(0));
  const MatrixDiffOp br = commutator(la, lb).with_jet_order(0);
  const MatrixDiffOp res = db_la - da_lb + br;
  const double den = std::max({op_norm_at(db_la, 0), op_norm_at(da_lb, 0), op_norm_at(br, 0)});
  const double num = op_norm_at(res, 0);
  return den > 0.0 ? num / den : num;
}

}  // namespace commring
