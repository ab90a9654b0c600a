#include "commring/meromorphic.hpp"

#include <algorithm>

#include "commring/error.hpp"

namespace commring {

MeromorphicFunction MeromorphicFunction::theta_quotient(VectorTheta numerator, int n) {
  if (numerator.space().r() != 1) fail(ErrorCode::DimensionMismatch, "numerator must be scalar");
  if (n < 0) fail(ErrorCode::ConfigInvalid, "pole order must be nonnegative");
  auto node = std::make_shared<Node>();
  node->kind = Kind::ThetaQuotient;
  node->numerator = std::make_unique<VectorTheta>(std::move(numerator));
  node->n = n;
  return MeromorphicFunction(node);
}

MeromorphicFunction MeromorphicFunction::log_derivative(const MultiIndex& m) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::LogDerivative;
  node->m = m;
  return MeromorphicFunction(node);
}

MeromorphicFunction MeromorphicFunction::constant(cplx c) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->c = c;
  return MeromorphicFunction(node);
}

MeromorphicFunction MeromorphicFunction::sum(const MeromorphicFunction& a, const MeromorphicFunction& b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sum;
  node->a = a.node_;
  node->b = b.node_;
  return MeromorphicFunction(node);
}

MeromorphicFunction MeromorphicFunction::product(const MeromorphicFunction& a, const MeromorphicFunction& b) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->a = a.node_;
  node->b = b.node_;
  return MeromorphicFunction(node);
}

MeromorphicFunction MeromorphicFunction::scaled(cplx c, const MeromorphicFunction& a) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Scaled;
  node->c = c;
  node->a = a.node_;
  return MeromorphicFunction(node);
}

int MeromorphicFunction::pole_order(const Node& n) {
  switch (n.kind) {
    case Kind::ThetaQuotient: return n.n;
    case Kind::LogDerivative: return order(n.m);
    case Kind::Constant: return 0;
    case Kind::Sum: return std::max(pole_order(*n.a), pole_order(*n.b));
    case Kind::Product: return pole_order(*n.a) + pole_order(*n.b);
    case Kind::Scaled: return n.c == 0.0 ? 0 : pole_order(*n.a);
  }
  return 0;
}

int MeromorphicFunction::required_order(const Node& n) {
  switch (n.kind) {
    case Kind::ThetaQuotient: return 0;
    case Kind::LogDerivative: return order(n.m);
    case Kind::Constant: return 0;
    case Kind::Sum:
    case Kind::Product: return std::max(required_order(*n.a), required_order(*n.b));
    case Kind::Scaled: return required_order(*n.a);
  }
  return 0;
}

bool MeromorphicFunction::is_constant(const Node& n) {
  switch (n.kind) {
    case Kind::ThetaQuotient: return n.n == 0;
    case Kind::LogDerivative: return false;
    case Kind::Constant: return true;
    case Kind::Sum:
    case Kind::Product: return is_constant(*n.a) && is_constant(*n.b);
    case Kind::Scaled: return n.c == 0.0 || is_constant(*n.a);
  }
  return false;
}

cplx MeromorphicFunction::evaluate(const Node& n, const DivisorPoint& p) {
  switch (n.kind) {
    case Kind::ThetaQuotient: {
      const cplx num = n.numerator->evaluate(p.z, 1e-15).value(0);
      return num / std::pow(p.value(), n.n);
    }
    case Kind::LogDerivative: return p.log_derivative(n.m);
    case Kind::Constant: return n.c;
    case Kind::Sum: return evaluate(*n.a, p) + evaluate(*n.b, p);
    case Kind::Product: return evaluate(*n.a, p) * evaluate(*n.b, p);
    case Kind::Scaled: return n.c * evaluate(*n.a, p);
  }
  return 0.0;
}

int MeromorphicFunction::pole_order() const { return pole_order(*node_); }
int MeromorphicFunction::required_order() const { return required_order(*node_); }
bool MeromorphicFunction::is_constant() const { return is_constant(*node_); }
cplx MeromorphicFunction::evaluate(const DivisorPoint& p) const { return evaluate(*node_, p); }

cplx MeromorphicFunction::evaluate(const Divisor& div, const CVec& z) const {
  return evaluate(div.at(z, required_order()));
}

MeromorphicFunction meromorphic_function(const Divisor& div, int n, const CVec& coeffs) {
  if (n < 1) fail(ErrorCode::ConfigInvalid, "pole order must be positive");
  const auto& base = div.theta().space();
  auto space = std::make_shared<const ThetaSpace>(base.system().with_degree(n * div.degree()), base.omega());
  return MeromorphicFunction::theta_quotient(VectorTheta(space, coeffs), n);
}

double lattice_invariance_residual(const MeromorphicFunction& f, const Divisor& div, const CVec& z, const IVec& m,
                                   const IVec& k) {
  const CVec shifted = z + div.omega().lattice_vector(k, m);
  const cplx a = f.evaluate(div, z);
  const cplx b = f.evaluate(div, shifted);
  return std::abs(a - b) / std::max(1.0, std::abs(a));
}

}  // namespace commring
