#include "commring/jet.hpp"

#include <algorithm>
#include <cmath>

#include "commring/error.hpp"

namespace commring {

Jet::Jet(int vars, int order)
    : table_(MonomialTable::get(vars, order)), coeffs_(CVec::Zero(table_->size())) {}

Jet::Jet(std::shared_ptr<const MonomialTable> table, CVec coeffs)
    : table_(std::move(table)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != table_->size()) fail(ErrorCode::DimensionMismatch, "jet coefficient count");
}

Jet Jet::constant(int vars, int order, cplx value) {
  Jet j(vars, order);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(int vars, int order, int j, cplx value) {
  if (j < 0 || j >= vars) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(j));
  Jet out = constant(vars, order, value);
  if (order >= 1) out.coeffs_[out.table_->raise(0, j)] = 1.0;
  return out;
}

Jet Jet::linear(int order, cplx c0, const CVec& w) {
  const int vars = static_cast<int>(w.size());
  Jet out = constant(vars, order, c0);
  if (order >= 1) {
    for (int j = 0; j < vars; ++j) out.coeffs_[out.table_->raise(0, j)] = w(j);
  }
  return out;
}

cplx Jet::coeff(const MultiIndex& a) const {
  const int i = table_->find(a);
  return i < 0 ? cplx(0.0) : coeffs_[i];
}

void Jet::set(const MultiIndex& a, cplx v) {
  const int i = table_->find(a);
  if (i < 0) fail(ErrorCode::IndexOutOfRange, "multi-index beyond jet order");
  coeffs_[i] = v;
}

cplx Jet::evaluate(const CVec& y) const {
  if (y.size() != vars()) fail(ErrorCode::VarCountMismatch, "evaluation point dimension");
  CVec mono(size());
  mono[0] = 1.0;
  cplx acc = coeffs_[0];
  for (int i = 1; i < size(); ++i) {
    const int j = table_->parent_var(i);
    mono[i] = mono[table_->lower(i, j)] * y(j);
    acc += coeffs_[i] * mono[i];
  }
  return acc;
}

double Jet::max_abs() const { return size() == 0 ? 0.0 : coeffs_.cwiseAbs().maxCoeff(); }

Jet Jet::truncated(int new_order) const {
  if (new_order > order()) fail(ErrorCode::InsufficientJetOrder, "cannot raise jet order by truncation");
  auto t = MonomialTable::get(vars(), new_order);
  return Jet(t, coeffs_.head(t->size()));
}

namespace {

void check_vars(const Jet& a, const Jet& b) {
  if (a.vars() != b.vars()) {
    fail(ErrorCode::VarCountMismatch, std::to_string(a.vars()) + " vs " + std::to_string(b.vars()));
  }
}

}  // namespace

Jet& Jet::operator+=(const Jet& o) {
  check_vars(*this, o);
  if (o.order() < order()) *this = truncated(o.order());
  coeffs_ += o.coeffs_.head(size());
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_vars(*this, o);
  if (o.order() < order()) *this = truncated(o.order());
  coeffs_ -= o.coeffs_.head(size());
  return *this;
}

Jet& Jet::operator*=(cplx s) {
  coeffs_ *= s;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = jet_mul(*this, o);
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(Jet a) { return a *= -1.0; }
Jet operator*(Jet a, cplx s) { return a *= s; }
Jet operator*(cplx s, Jet a) { return a *= s; }
Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }

Jet jet_mul(const Jet& a, const Jet& b) {
  check_vars(a, b);
  const int ord = std::min(a.order(), b.order());
  auto t = MonomialTable::get(a.vars(), ord);
  CVec c = CVec::Zero(t->size());
  const CVec& x = a.coeffs();
  const CVec& y = b.coeffs();
  // Products in a smaller table are a prefix-closed subset of the larger table's list.
  for (const auto& p : t->products()) c[p.c] += x[p.a] * y[p.b];
  return Jet(t, std::move(c));
}

Jet jet_derive(const Jet& a, int j) {
  if (j < 0 || j >= a.vars()) fail(ErrorCode::IndexOutOfRange, "derivative variable " + std::to_string(j));
  if (a.order() == 0) fail(ErrorCode::InsufficientJetOrder, "derivative of an order-0 jet");
  auto t = MonomialTable::get(a.vars(), a.order() - 1);
  CVec c(t->size());
  const auto& src = a.table();
  for (int i = 0; i < t->size(); ++i) {
    const int up = src.raise(i, j);
    c[i] = a[up] * static_cast<double>(t->index(i)[j] + 1);
  }
  return Jet(t, std::move(c));
}

Jet jet_derive(const Jet& f, const MultiIndex& a) {
  if (static_cast<int>(a.size()) != f.vars()) fail(ErrorCode::VarCountMismatch, "derivative multi-index");
  const int k = order(a);
  if (k > f.order()) fail(ErrorCode::InsufficientJetOrder, "derivative order exceeds jet order");
  auto t = MonomialTable::get(f.vars(), f.order() - k);
  CVec c(t->size());
  for (int i = 0; i < t->size(); ++i) {
    const MultiIndex b = add(t->index(i), a);
    const double scale = factorial(b) / t->factorial(i);
    c[i] = f.coeff(b) * scale;
  }
  return Jet(t, std::move(c));
}

Jet jet_exp(const Jet& a) {
  const cplx a0 = a.value();
  Jet u = a;
  u[0] = 0.0;
  Jet result = Jet::constant(a.vars(), a.order(), 1.0);
  Jet term = result;
  for (int k = 1; k <= a.order(); ++k) {
    term = jet_mul(term, u) * (1.0 / k);
    result += term;
  }
  return result * std::exp(a0);
}

Jet jet_log(const Jet& a) {
  const cplx a0 = a.value();
  if (a0 == 0.0) fail(ErrorCode::DegenerateMatrix, "log of a jet with zero constant term");
  Jet u = a * (1.0 / a0);
  u[0] = 0.0;
  Jet result(a.vars(), a.order());
  Jet power = Jet::constant(a.vars(), a.order(), 1.0);
  for (int k = 1; k <= a.order(); ++k) {
    power = jet_mul(power, u);
    result += power * ((k % 2 == 1 ? 1.0 : -1.0) / k);
  }
  result[0] = std::log(a0);
  return result;
}

Jet jet_inv(const Jet& a) {
  const cplx a0 = a.value();
  if (a0 == 0.0) fail(ErrorCode::DegenerateMatrix, "inverse of a jet with zero constant term");
  Jet u = a * (1.0 / a0);
  u[0] = 0.0;
  Jet result = Jet::constant(a.vars(), a.order(), 1.0);
  Jet power = result;
  for (int k = 1; k <= a.order(); ++k) {
    power = jet_mul(power, u) * -1.0;
    result += power;
  }
  return result * (1.0 / a0);
}

Jet jet_pow(const Jet& a, int n) {
  if (n < 0) return jet_pow(jet_inv(a), -n);
  Jet result = Jet::constant(a.vars(), a.order(), 1.0);
  Jet base = a;
  while (n > 0) {
    if (n & 1) result = jet_mul(result, base);
    n >>= 1;
    if (n > 0) base = jet_mul(base, base);
  }
  return result;
}

Jet jet_linear_substitute(const Jet& f, const CMat& P, int new_order) {
  if (P.rows() != f.vars()) fail(ErrorCode::VarCountMismatch, "substitution matrix rows");
  if (new_order > f.order()) fail(ErrorCode::InsufficientJetOrder, "substitution order exceeds jet order");
  const int nv = static_cast<int>(P.cols());
  std::vector<Jet> lin;
  for (int j = 0; j < f.vars(); ++j) lin.push_back(Jet::linear(new_order, 0.0, P.row(j).transpose()));
  auto src = f.table_ptr();
  // Powers of the substituted variables are built along the parent chain of the source table.
  std::vector<Jet> mono(src->size());
  Jet out(nv, new_order);
  mono[0] = Jet::constant(nv, new_order, 1.0);
  out += mono[0] * f[0];
  for (int i = 1; i < src->size(); ++i) {
    if (src->degree(i) > new_order) break;
    const int j = src->parent_var(i);
    mono[i] = jet_mul(mono[src->lower(i, j)], lin[j]);
    if (f[i] != 0.0) out += mono[i] * f[i];
  }
  return out;
}

Jet jet_restrict(const Jet& f, const std::vector<int>& keep) {
  const int nv = static_cast<int>(keep.size());
  auto t = MonomialTable::get(nv, f.order());
  CVec c(t->size());
  for (int i = 0; i < t->size(); ++i) {
    MultiIndex a(f.vars(), 0);
    for (int k = 0; k < nv; ++k) {
      if (keep[k] < 0 || keep[k] >= f.vars()) fail(ErrorCode::IndexOutOfRange, "restricted variable");
      a[keep[k]] = t->index(i)[k];
    }
    c[i] = f.coeff(a);
  }
  return Jet(t, std::move(c));
}

double jet_distance(const Jet& a, const Jet& b) {
  check_vars(a, b);
  const Jet& big = a.size() >= b.size() ? a : b;
  const Jet& small = a.size() >= b.size() ? b : a;
  CVec d = big.coeffs();
  d.head(small.size()) -= small.coeffs();
  return d.size() == 0 ? 0.0 : d.cwiseAbs().maxCoeff();
}

}  // namespace commring
