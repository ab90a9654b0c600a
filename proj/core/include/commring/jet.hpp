#pragma once

#include <memory>

#include "commring/monomials.hpp"
#include "commring/types.hpp"

namespace commring {

/// Truncated multivariate Taylor expansion at 0. Coefficient i stores
/// d^a f(0) / a! for a = table().index(i).
class Jet {
 public:
  Jet() : Jet(0, 0) {}
  Jet(int vars, int order);
  Jet(std::shared_ptr<const MonomialTable> table, CVec coeffs);

  static Jet constant(int vars, int order, cplx value);
  /// The jet of value + x_j.
  static Jet variable(int vars, int order, int j, cplx value = 0.0);
  /// The jet of c0 + sum_j w_j x_j.
  static Jet linear(int order, cplx c0, const CVec& w);

  int vars() const { return table_->vars(); }
  int order() const { return table_->order(); }
  int size() const { return table_->size(); }
  const MonomialTable& table() const { return *table_; }
  const std::shared_ptr<const MonomialTable>& table_ptr() const { return table_; }
  const CVec& coeffs() const { return coeffs_; }
  CVec& coeffs() { return coeffs_; }

  cplx operator[](int i) const { return coeffs_[i]; }
  cplx& operator[](int i) { return coeffs_[i]; }
  /// Taylor coefficient of x^a (0 when a exceeds the order).
  cplx coeff(const MultiIndex& a) const;
  void set(const MultiIndex& a, cplx v);
  cplx value() const { return coeffs_[0]; }
  /// d^a f(0).
  cplx derivative_value(const MultiIndex& a) const { return coeff(a) * factorial(a); }
  /// Evaluate the truncated polynomial at y.
  cplx evaluate(const CVec& y) const;
  double max_abs() const;

  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(cplx s);
  Jet& operator*=(const Jet& o);

 private:
  std::shared_ptr<const MonomialTable> table_;
  CVec coeffs_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(Jet a);
Jet operator*(Jet a, cplx s);
Jet operator*(cplx s, Jet a);
Jet operator*(const Jet& a, const Jet& b);

/// Truncated Cauchy product; result order is min of the operand orders.
Jet jet_mul(const Jet& a, const Jet& b);
/// Formal partial derivative in variable j (0-based); order drops by one.
Jet jet_derive(const Jet& a, int j);
/// Apply d^a; order drops by |a|.
Jet jet_derive(const Jet& f, const MultiIndex& a);
Jet jet_exp(const Jet& a);
/// Principal-branch log of the constant term plus the series of log(1 + u).
Jet jet_log(const Jet& a);
Jet jet_inv(const Jet& a);
Jet jet_pow(const Jet& a, int n);
/// Composition f(P y) with P a (f.vars() x new_vars) matrix; result has the given order.
Jet jet_linear_substitute(const Jet& f, const CMat& P, int order);
/// Keep only the variables listed in `keep` (others set to 0).
Jet jet_restrict(const Jet& f, const std::vector<int>& keep);
/// Max coefficient difference, padding the shorter jet with zeros.
double jet_distance(const Jet& a, const Jet& b);

}  // namespace commring
