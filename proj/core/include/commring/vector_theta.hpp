#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "commring/jet.hpp"
#include "commring/multipliers.hpp"
#include "commring/random.hpp"
#include "commring/riemann_matrix.hpp"

namespace commring {

inline constexpr int kDefaultRadiusCap = 60;

/// Inputs of the summand majorant beyond the lattice data.
struct MajorantParams {
  double domain_radius = 0.0;   // bound on |Im z|
  int jet_order = 0;            // highest derivative / Taylor order requested
  double direction_norm = 1.0;  // operator norm of the jet direction matrix
};

/// Value of a vector theta with its truncation certificate.
struct ThetaValue {
  CVec value;
  int truncation_radius = 0;
  double error_bound = 0.0;
};

/// Jets in y of every unit-seed theta b at z + M y; basis[b][p] is component p.
struct ThetaJetTable {
  std::vector<std::vector<Jet>> basis;
  int truncation_radius = 0;
  double error_bound = 0.0;
};

/// The rs^g-dimensional space of vector thetas of one degree and multiplier system.
/// Seed slot b = l0_index * r + component, with l0 in [0, s)^g enumerated lexicographically.
class ThetaSpace {
 public:
  ThetaSpace(MultiplierSystem sys, RiemannMatrix omega, int radius_cap = kDefaultRadiusCap);

  const MultiplierSystem& system() const { return sys_; }
  const RiemannMatrix& omega() const { return omega_; }
  int g() const { return sys_.g(); }
  int r() const { return sys_.r(); }
  int degree() const { return sys_.s(); }
  int seed_count() const { return seed_count_; }
  int dimension() const { return seed_count_ * r(); }
  IVec l0(int index) const;
  int l0_index(const IVec& l0) const;

  /// Bound on the summed majorant over all l' with |l'|_inf > R for one seed of norm 1.
  double tail_bound(int radius, const MajorantParams& p) const;
  /// Smallest R with tail_bound(R) < tol; TolTooSmall beyond the cap.
  int truncation_radius(const MajorantParams& p, double tol) const;

  ThetaJetTable jets(const CVec& z, const CMat& direction, int order, double tol) const;

 private:
  double log_tail(int radius, const MajorantParams& p) const;

  MultiplierSystem sys_;
  RiemannMatrix omega_;
  int radius_cap_;
  int seed_count_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::tuple<std::int64_t, int, std::int64_t, std::int64_t>, int> radius_cache_;
};

/// A vector theta: a ThetaSpace together with its s^g seed vectors a_{l0}.
class VectorTheta {
 public:
  VectorTheta(std::shared_ptr<const ThetaSpace> space, CVec seeds);
  static VectorTheta unit(std::shared_ptr<const ThetaSpace> space, int seed_slot);

  const ThetaSpace& space() const { return *space_; }
  const std::shared_ptr<const ThetaSpace>& space_ptr() const { return space_; }
  const CVec& seeds() const { return seeds_; }
  CVec seed(int l0_index) const { return seeds_.segment(l0_index * space_->r(), space_->r()); }

  /// a_{l0 + s l} in closed form.
  CVec coefficient(const IVec& l) const;
  int truncation_radius(double domain_radius, double tol, int deriv_order = 0) const;
  /// Term-wise differentiated lattice sum with certified tail.
  ThetaValue evaluate(const CVec& z, const MultiIndex& deriv, double tol = 1e-14) const;
  ThetaValue evaluate(const CVec& z, double tol = 1e-14) const { return evaluate(z, MultiIndex(space_->g(), 0), tol); }
  /// Summation with an explicit radius (no certificate); used for cross-checks.
  CVec evaluate_with_radius(const CVec& z, const MultiIndex& deriv, int radius) const;
  /// Jets of theta(z + M y), one per component.
  std::vector<Jet> evaluate_jet(const CVec& z, const CMat& direction, int order, double tol = 1e-14) const;

 private:
  double seed_weight() const;
  std::shared_ptr<const ThetaSpace> space_;
  CVec seeds_;
};

/// |theta(z + Omega m + n) - e_{(n, m)}(z) theta(z)| relative to max(|e theta|, 1).
double theta_quasi_periodicity_residual(const VectorTheta& theta, const CVec& z, const IVec& m, const IVec& n,
                                        double tol = 1e-14);

/// The unit-seed basis with its evaluation-rank witness.
struct ThetaBasis {
  std::vector<VectorTheta> elements;
  int gram_rank = 0;
  RVec singular_values;
};

/// Unit-seed basis; RankDeficient when the evaluation matrix at rs^g + 5 random points is degenerate.
ThetaBasis theta_basis(const MultiplierSystem& sys, const RiemannMatrix& omega, std::mt19937_64& rng,
                       double rank_tol = 1e-8);

/// Uniform random point of the fundamental parallelotope u + Omega v, u, v in [-1/2, 1/2)^g.
CVec random_torus_point(const RiemannMatrix& omega, std::mt19937_64& rng);

/// l' vectors with |l'|_inf <= R ordered by shell; cached.
const std::vector<IVec>& shell_ordered_box(int g, int radius);

}  // namespace commring
