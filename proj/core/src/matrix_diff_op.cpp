#include "commring/matrix_diff_op.hpp"

#include <algorithm>
#include <cmath>

#include "commring/error.hpp"

namespace commring {

MatrixDiffOp::MatrixDiffOp(int n, int vars, int order, int jet_order)
    : n_(n),
      vars_(vars),
      order_(order),
      jet_order_(jet_order),
      derivs_(MonomialTable::get(vars, order)),
      jets_(MonomialTable::get(vars, jet_order)) {
  if (n < 1 || vars < 0 || order < 0 || jet_order < 0) fail(ErrorCode::ShapeMismatch, "invalid operator shape");
  data_.assign(static_cast<std::size_t>(derivs_->size()) * jets_->size(), CMat::Zero(n, n));
}

MatrixDiffOp MatrixDiffOp::identity(int n, int vars, int jet_order) {
  MatrixDiffOp op(n, vars, 0, jet_order);
  op.coeff(0, 0) = CMat::Identity(n, n);
  return op;
}

MatrixDiffOp MatrixDiffOp::derivative(int n, int vars, int jet_order, int j) {
  if (j < 0 || j >= vars) fail(ErrorCode::IndexOutOfRange, "derivative variable");
  MatrixDiffOp op(n, vars, 1, jet_order);
  op.coeff(op.derivs().find(unit_index(vars, j)), 0) = CMat::Identity(n, n);
  return op;
}

MatrixDiffOp MatrixDiffOp::multiplication(int n, const Jet& f) {
  MatrixDiffOp op(n, f.vars(), 0, f.order());
  for (int d = 0; d < f.size(); ++d) op.coeff(0, d) = f[d] * CMat::Identity(n, n);
  return op;
}

Jet MatrixDiffOp::entry(const MultiIndex& a, int i, int j) const {
  const int ia = derivs_->find(a);
  Jet out(vars_, jet_order_);
  if (ia < 0) return out;
  for (int d = 0; d < jets_->size(); ++d) out[d] = coeff(ia, d)(i, j);
  return out;
}

void MatrixDiffOp::set_entry(const MultiIndex& a, int i, int j, const Jet& f) {
  const int ia = derivs_->find(a);
  if (ia < 0) fail(ErrorCode::IndexOutOfRange, "derivative index beyond operator order");
  if (f.vars() != vars_) fail(ErrorCode::VarCountMismatch, "coefficient jet variables");
  for (int d = 0; d < jets_->size(); ++d) coeff(ia, d)(i, j) = d < f.size() ? f[d] : cplx(0.0);
}

MatrixDiffOp MatrixDiffOp::with_jet_order(int jet_order) const {
  if (jet_order > jet_order_) fail(ErrorCode::InsufficientJetOrder, "cannot raise operator jet order");
  MatrixDiffOp out(n_, vars_, order_, jet_order);
  for (int a = 0; a < derivs_->size(); ++a) {
    for (int d = 0; d < out.jets_->size(); ++d) out.coeff(a, d) = coeff(a, d);
  }
  return out;
}

MatrixDiffOp MatrixDiffOp::with_order(int order) const {
  if (order < order_) fail(ErrorCode::ShapeMismatch, "cannot lower operator order");
  MatrixDiffOp out(n_, vars_, order, jet_order_);
  for (int a = 0; a < derivs_->size(); ++a) {
    for (int d = 0; d < jets_->size(); ++d) out.coeff(a, d) = coeff(a, d);
  }
  return out;
}

int MatrixDiffOp::effective_order(double rel_tol) const {
  double biggest = 0.0;
  for (const auto& m : data_) biggest = std::max(biggest, m.norm());
  int eff = 0;
  for (int a = 0; a < derivs_->size(); ++a) {
    for (int d = 0; d < jets_->size(); ++d) {
      if (coeff(a, d).norm() > rel_tol * biggest) eff = std::max(eff, derivs_->degree(a));
    }
  }
  return eff;
}

namespace {

void check_shape(const MatrixDiffOp& a, const MatrixDiffOp& b) {
  if (a.n() != b.n() || a.vars() != b.vars()) fail(ErrorCode::ShapeMismatch, "operators differ in N or variables");
}

MatrixDiffOp combine(const MatrixDiffOp& a, const MatrixDiffOp& b, double sign) {
  check_shape(a, b);
  MatrixDiffOp out(a.n(), a.vars(), std::max(a.order(), b.order()), std::min(a.jet_order(), b.jet_order()));
  const auto& dt = out.derivs();
  for (int ia = 0; ia < a.derivs().size(); ++ia) {
    const int io = dt.find(a.derivs().index(ia));
    for (int d = 0; d < out.jets().size(); ++d) out.coeff(io, d) += a.coeff(ia, d);
  }
  for (int ib = 0; ib < b.derivs().size(); ++ib) {
    const int io = dt.find(b.derivs().index(ib));
    for (int d = 0; d < out.jets().size(); ++d) out.coeff(io, d) += sign * b.coeff(ib, d);
  }
  return out;
}

double binomial(const MultiIndex& a, const MultiIndex& g) {
  return factorial(a) / (factorial(g) * factorial(sub(a, g)));
}

}  // namespace

MatrixDiffOp& MatrixDiffOp::operator+=(const MatrixDiffOp& o) { return *this = combine(*this, o, 1.0); }
MatrixDiffOp& MatrixDiffOp::operator-=(const MatrixDiffOp& o) { return *this = combine(*this, o, -1.0); }
MatrixDiffOp& MatrixDiffOp::operator*=(cplx s) {
  for (auto& m : data_) m *= s;
  return *this;
}

MatrixDiffOp operator+(MatrixDiffOp a, const MatrixDiffOp& b) { return a += b; }
MatrixDiffOp operator-(MatrixDiffOp a, const MatrixDiffOp& b) { return a -= b; }
MatrixDiffOp operator*(cplx s, MatrixDiffOp a) { return a *= s; }

std::vector<std::vector<Jet>> apply(const MatrixDiffOp& op, const std::vector<std::vector<Jet>>& phi) {
  if (static_cast<int>(phi.size()) != op.n()) fail(ErrorCode::ShapeMismatch, "need N functions");
  const int r = static_cast<int>(phi.front().size());
  const int k = phi.front().front().order();
  if (phi.front().front().vars() != op.vars()) fail(ErrorCode::VarCountMismatch, "function jets and operator");
  if (k < op.order()) fail(ErrorCode::InsufficientJetOrder, "function jets shorter than operator order");
  const int out_order = std::min(op.jet_order(), k - op.order());
  const int n = op.n();
  std::vector<std::vector<Jet>> out(n, std::vector<Jet>(r, Jet(op.vars(), out_order)));
  for (int ia = 0; ia < op.derivs().size(); ++ia) {
    const MultiIndex& a = op.derivs().index(ia);
    std::vector<std::vector<Jet>> d(n);
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < r; ++p) d[j].push_back(jet_derive(phi[j][p], a).truncated(out_order));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Jet c(op.vars(), out_order);
        bool any = false;
        for (int dd = 0; dd < c.size(); ++dd) {
          c[dd] = op.coeff(ia, dd)(i, j);
          any = any || c[dd] != 0.0;
        }
        if (!any) continue;
        for (int p = 0; p < r; ++p) out[i][p] += jet_mul(c, d[j][p]);
      }
    }
  }
  return out;
}

MatrixDiffOp compose(const MatrixDiffOp& l1, const MatrixDiffOp& l2) {
  check_shape(l1, l2);
  if (l2.jet_order() < l1.order()) fail(ErrorCode::InsufficientJetOrder, "jet budget exhausted by composition");
  const int jo = std::min(l1.jet_order(), l2.jet_order() - l1.order());
  const int vars = l1.vars();
  MatrixDiffOp out(l1.n(), vars, l1.order() + l2.order(), jo);
  const auto& jt = out.jets();
  const auto& src2 = l2.jets();
  for (int ia = 0; ia < l1.derivs().size(); ++ia) {
    const MultiIndex& a = l1.derivs().index(ia);
    for (const MultiIndex& gm : indices_up_to(vars, order(a))) {
      if (!leq(gm, a)) continue;
      const double binom = binomial(a, gm);
      const MultiIndex rest = sub(a, gm);
      for (int ib = 0; ib < l2.derivs().size(); ++ib) {
        const MultiIndex& b = l2.derivs().index(ib);
        const int io = out.derivs().find(add(rest, b));
        // Taylor coefficients of d^gm c_b truncated to the output jet order.
        std::vector<CMat> db(jt.size());
        bool any = false;
        for (int d = 0; d < jt.size(); ++d) {
          const MultiIndex src = add(jt.index(d), gm);
          const int is = src2.find(src);
          if (is < 0) {
            db[d] = CMat::Zero(l1.n(), l1.n());
            continue;
          }
          db[d] = l2.coeff(ib, is) * (factorial(src) / jt.factorial(d));
          any = any || !db[d].isZero(0.0);
        }
        if (!any) continue;
        for (const auto& p : jt.products()) {
          const CMat& ca = l1.coeff(ia, p.a);
          if (ca.isZero(0.0)) continue;
          out.coeff(io, p.c) += binom * ca * db[p.b];
        }
      }
    }
  }
  return out;
}

MatrixDiffOp commutator(const MatrixDiffOp& l1, const MatrixDiffOp& l2) { return compose(l1, l2) - compose(l2, l1); }

RVec op_norm_profile(const MatrixDiffOp& op) {
  RVec prof = RVec::Zero(op.jet_order() + 1);
  for (int ia = 0; ia < op.derivs().size(); ++ia) {
    RVec acc = RVec::Zero(op.jet_order() + 1);
    for (int d = 0; d < op.jets().size(); ++d) acc(op.jets().degree(d)) += op.coeff(ia, d).squaredNorm();
    for (int k = 0; k <= op.jet_order(); ++k) prof(k) = std::max(prof(k), std::sqrt(acc(k)));
  }
  return prof;
}

double op_norm(const MatrixDiffOp& op) { return op_norm_profile(op).maxCoeff(); }

double op_norm_at(const MatrixDiffOp& op, int k) {
  const RVec prof = op_norm_profile(op);
  if (k < 0 || k >= prof.size()) fail(ErrorCode::InsufficientJetOrder, "jet order not available");
  return prof(k);
}

}  // namespace commring
