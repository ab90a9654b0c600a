#pragma once

#include <memory>
#include <string>
#include <vector>

#include "commring/jet.hpp"

namespace commring {

/// Jet-valued N x N matrices, one per derivative multi-index:
/// L = sum_a c_a(y) d^a with c_a(y) = sum_d C[a][d] y^d (Taylor coefficients).
class MatrixDiffOp {
 public:
  MatrixDiffOp(int n, int vars, int order, int jet_order);

  static MatrixDiffOp identity(int n, int vars, int jet_order);
  /// d/dy_j times the identity matrix.
  static MatrixDiffOp derivative(int n, int vars, int jet_order, int j);
  /// Multiplication by the scalar jet f times the identity matrix.
  static MatrixDiffOp multiplication(int n, const Jet& f);

  int n() const { return n_; }
  int vars() const { return vars_; }
  int order() const { return order_; }
  int jet_order() const { return jet_order_; }
  const MonomialTable& derivs() const { return *derivs_; }
  const MonomialTable& jets() const { return *jets_; }

  CMat& coeff(int ia, int id) { return data_[static_cast<std::size_t>(ia) * jets_->size() + id]; }
  const CMat& coeff(int ia, int id) const { return data_[static_cast<std::size_t>(ia) * jets_->size() + id]; }
  /// The (i, j) entry of c_a as a jet.
  Jet entry(const MultiIndex& a, int i, int j) const;
  void set_entry(const MultiIndex& a, int i, int j, const Jet& f);

  MatrixDiffOp with_jet_order(int jet_order) const;
  /// Same operator viewed with a larger derivative order (new slots zero).
  MatrixDiffOp with_order(int order) const;
  /// Highest |a| whose coefficient exceeds tol times the largest coefficient.
  int effective_order(double rel_tol = 1e-12) const;

  MatrixDiffOp& operator+=(const MatrixDiffOp& o);
  MatrixDiffOp& operator-=(const MatrixDiffOp& o);
  MatrixDiffOp& operator*=(cplx s);

 private:
  int n_;
  int vars_;
  int order_;
  int jet_order_;
  std::shared_ptr<const MonomialTable> derivs_;
  std::shared_ptr<const MonomialTable> jets_;
  std::vector<CMat> data_;
};

MatrixDiffOp operator+(MatrixDiffOp a, const MatrixDiffOp& b);
MatrixDiffOp operator-(MatrixDiffOp a, const MatrixDiffOp& b);
MatrixDiffOp operator*(cplx s, MatrixDiffOp a);

/// (L Phi)_i = sum_a sum_j (c_a)_{ij} d^a Phi_j; phi[j][p] is component p of function j.
std::vector<std::vector<Jet>> apply(const MatrixDiffOp& op, const std::vector<std::vector<Jet>>& phi);
/// Leibniz expansion; result jet order = min(J1, J2 - order1).
MatrixDiffOp compose(const MatrixDiffOp& l1, const MatrixDiffOp& l2);
MatrixDiffOp commutator(const MatrixDiffOp& l1, const MatrixDiffOp& l2);

/// Per jet order k: max over a of the Frobenius norm of the degree-k part of c_a.
RVec op_norm_profile(const MatrixDiffOp& op);
/// Maximum of the profile.
double op_norm(const MatrixDiffOp& op);
/// Profile entry at jet order k.
double op_norm_at(const MatrixDiffOp& op, int k);

/// Text dump with a shape header and one record per nonzero (a, i, j, d) entry; round-trips bit-exactly.
std::string dump_operator(const MatrixDiffOp& op);
MatrixDiffOp parse_operator(const std::string& text);
void write_operator(const MatrixDiffOp& op, const std::string& path);
MatrixDiffOp read_operator(const std::string& path);

}  // namespace commring
