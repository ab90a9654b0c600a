#pragma once

#include <optional>
#include <vector>

#include "commring/divisor.hpp"

namespace commring {

/// Parametrization of the x-variables by active jet variables y:
/// x = base + P y. Each flow multiplies elements by exp(y_var * mu(z)) with
/// mu = -(1/s) d^m log theta(z); a fixed flow contributes exp(t * mu(z)) for a frozen time t.
struct JetFrame {
  struct Flow {
    int var;
    MultiIndex m;
  };
  struct FixedFlow {
    MultiIndex m;
    double t;
  };

  CMat P;
  CVec base;
  std::vector<Flow> flows;
  std::vector<FixedFlow> fixed_flows;

  int vars() const { return static_cast<int>(P.cols()); }
  int g() const { return static_cast<int>(P.rows()); }
  /// y = x, all g variables active.
  static JetFrame full(int g);
  /// y = (x_1, ..., x_nv), remaining slots frozen at 0.
  static JetFrame leading(int g, int nv);
  /// Highest log-derivative order the flows consume.
  int flow_order() const;
};

/// One module generator g(x) theta(z + (x+c)/(s n)) / theta(z)^n exp(-sum_j (x_j/s) d_j log theta(z)).
struct BAElement {
  int level = 1;
  VectorTheta numerator;
  CVec c;
  bool gauge = true;
  std::optional<Jet> prefactor;
};

/// Checks the numerator degree against s * level.
BAElement make_element(const Divisor& div, int level, VectorTheta numerator, CVec c,
                       std::optional<Jet> prefactor = std::nullopt);

/// Jets in the frame variables of every element at z. Elements sharing a theta space and
/// parameter c share one lattice summation.
std::vector<std::vector<Jet>> evaluate_basis_jets(const std::vector<BAElement>& elements, const Divisor& div,
                                                  const DivisorPoint& point, const JetFrame& frame, int order,
                                                  bool include_gauge = true);

std::vector<Jet> evaluate_jet(const BAElement& e, const Divisor& div, const CVec& z, const JetFrame& frame, int order);

/// Jets of the section part f(z, x) = theta(z + (x+c)/(s n)) / theta(z)^n (no gauge, no prefactor).
std::vector<Jet> evaluate_section_jet(const BAElement& e, const Divisor& div, const CVec& z, const JetFrame& frame,
                                      int order);

/// nabla_j f = d_{x_j} f - (1/s) d_{z_j} log theta(z) f on section jets; `w` is grad log theta(z).
std::vector<Jet> covariant_derivative(const std::vector<Jet>& section, int j, const CVec& w, int s);

/// Relative deviation of f(z + Omega m + k, x) from exp(-2 pi i <m, c + x>) A^m f(z, x) as x-jets.
double quasi_periodicity_residual(const BAElement& e, const Divisor& div, const CVec& z, const IVec& m, const IVec& k,
                                  int order);

}  // namespace commring
