#pragma once

#include <memory>
#include <vector>

#include "commring/divisor.hpp"

namespace commring {

/// Expression tree for meromorphic functions on the torus with poles on Y:
/// theta quotients Theta/theta^n, derivatives of log theta and their sums,
/// products and scalar multiples.
class MeromorphicFunction {
 public:
  enum class Kind { ThetaQuotient, LogDerivative, Constant, Sum, Product, Scaled };

  static MeromorphicFunction theta_quotient(VectorTheta numerator, int n);
  static MeromorphicFunction log_derivative(const MultiIndex& m);
  static MeromorphicFunction constant(cplx c);
  static MeromorphicFunction sum(const MeromorphicFunction& a, const MeromorphicFunction& b);
  static MeromorphicFunction product(const MeromorphicFunction& a, const MeromorphicFunction& b);
  static MeromorphicFunction scaled(cplx c, const MeromorphicFunction& a);

  Kind kind() const { return node_->kind; }
  int pole_order() const;
  /// Highest log-derivative order consumed; the DivisorPoint must carry it.
  int required_order() const;
  bool is_constant() const;
  cplx evaluate(const DivisorPoint& p) const;
  cplx evaluate(const Divisor& div, const CVec& z) const;

 private:
  struct Node {
    Kind kind;
    std::unique_ptr<VectorTheta> numerator;
    int n = 0;
    MultiIndex m;
    cplx c = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };
  explicit MeromorphicFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static int pole_order(const Node& n);
  static int required_order(const Node& n);
  static bool is_constant(const Node& n);
  static cplx evaluate(const Node& n, const DivisorPoint& p);
  std::shared_ptr<const Node> node_;
};

/// Theta(z) / theta(z)^n with Theta the scalar theta of degree n s whose seeds are `coeffs`.
MeromorphicFunction meromorphic_function(const Divisor& div, int n, const CVec& coeffs);

/// |f(z + Omega m + k) - f(z)| relative to max(1, |f(z)|).
double lattice_invariance_residual(const MeromorphicFunction& f, const Divisor& div, const CVec& z, const IVec& m,
                                   const IVec& k);

}  // namespace commring
