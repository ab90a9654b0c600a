#include "commring/vector_theta.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "commring/error.hpp"
#include "commring/linalg.hpp"

namespace commring {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

const std::vector<IVec>& shell_ordered_box(int g, int radius) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<IVec>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({g, radius});
  if (it != cache.end()) return it->second;
  std::vector<IVec> pts;
  IVec cur = IVec::Constant(g, -radius);
  while (true) {
    pts.push_back(cur);
    int j = g - 1;
    while (j >= 0 && cur(j) == radius) {
      cur(j) = -radius;
      --j;
    }
    if (j < 0) break;
    ++cur(j);
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const IVec& a, const IVec& b) { return a.cwiseAbs().maxCoeff() < b.cwiseAbs().maxCoeff(); });
  return cache.emplace(std::make_pair(g, radius), std::move(pts)).first->second;
}

ThetaSpace::ThetaSpace(MultiplierSystem sys, RiemannMatrix omega, int radius_cap)
    : sys_(std::move(sys)), omega_(std::move(omega)), radius_cap_(radius_cap) {
  if (sys_.g() != omega_.g()) fail(ErrorCode::DimensionMismatch, "multiplier system and Riemann matrix disagree on g");
  seed_count_ = 1;
  for (int j = 0; j < g(); ++j) seed_count_ *= degree();
}

IVec ThetaSpace::l0(int index) const {
  IVec out(g());
  for (int j = g() - 1; j >= 0; --j) {
    out(j) = index % degree();
    index /= degree();
  }
  return out;
}

int ThetaSpace::l0_index(const IVec& l0) const {
  int idx = 0;
  for (int j = 0; j < g(); ++j) idx = idx * degree() + l0(j);
  return idx;
}

double ThetaSpace::log_tail(int radius, const MajorantParams& p) const {
  const double d = degree();
  const double gg = g();
  const double l0n = (d - 1.0) * std::sqrt(gg);
  const double a = d * kPi * omega_.lambda_min();
  const double b = 2.0 * kPi * l0n * omega_.lambda_max() + 2.0 * kPi * d * p.domain_radius +
                   std::sqrt(gg) * std::log(sys_.c_max());
  const double g0 = 2.0 * kPi * l0n * p.domain_radius;
  const double nu = 2.0 * kPi * p.direction_norm;
  const int kk = p.jet_order;
  auto f = [&](double t) { return -a * t * t + b * t + g0 + kk * std::log1p(nu * (l0n + d * t)); };
  auto fprime = [&](double t) { return -2.0 * a * t + b + kk * nu * d / (1.0 + nu * (l0n + d * t)); };
  auto shell_max = [&](int k) {
    double lo = k;
    double hi = std::sqrt(gg) * k;
    if (fprime(lo) <= 0.0 || hi <= lo) return f(lo);
    if (fprime(hi) >= 0.0) return f(hi);
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (fprime(mid) > 0.0) lo = mid;
      else hi = mid;
    }
    return f(hi) + 1e-12 * std::abs(f(hi));
  };
  auto log_count = [&](int k) {
    return std::log(std::pow(2.0 * k + 1.0, gg) - std::pow(2.0 * k - 1.0, gg));
  };
  double total = -std::numeric_limits<double>::infinity();
  double prev = shell_max(radius + 1) + log_count(radius + 1);
  total = prev;
  for (int k = radius + 2; k < radius + 100000; ++k) {
    const double cur = shell_max(k) + log_count(k);
    const double log_q = cur - prev;
    if (fprime(k - 1) < 0.0 && log_q < std::log(0.5)) {
      // Remaining shells decay at least geometrically with ratio exp(log_q).
      return log_add(total, cur - std::log1p(-std::exp(log_q)));
    }
    total = log_add(total, cur);
    prev = cur;
  }
  return std::numeric_limits<double>::infinity();
}

double ThetaSpace::tail_bound(int radius, const MajorantParams& p) const { return std::exp(log_tail(radius, p)); }

int ThetaSpace::truncation_radius(const MajorantParams& p, double tol) const {
  if (!(tol > 0.0)) fail(ErrorCode::TolTooSmall, "tolerance must be positive");
  // Cache on a conservative rounding of the domain radius.
  const double rho = std::ceil(p.domain_radius * 64.0) / 64.0;
  const auto key = std::make_tuple(static_cast<std::int64_t>(rho * 64.0), p.jet_order,
                                   std::bit_cast<std::int64_t>(p.direction_norm), std::bit_cast<std::int64_t>(tol));
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = radius_cache_.find(key);
    if (it != radius_cache_.end()) return it->second;
  }
  MajorantParams q = p;
  q.domain_radius = rho;
  const double log_tol = std::log(tol);
  for (int r = 0; r <= radius_cap_; ++r) {
    if (log_tail(r, q) < log_tol) {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      radius_cache_[key] = r;
      return r;
    }
  }
  fail(ErrorCode::TolTooSmall, "truncation radius would exceed cap " + std::to_string(radius_cap_));
}

ThetaJetTable ThetaSpace::jets(const CVec& z, const CMat& direction, int order, double tol) const {
  if (z.size() != g() || direction.rows() != g()) fail(ErrorCode::DimensionMismatch, "jet point / direction");
  const int nv = static_cast<int>(direction.cols());
  MajorantParams p;
  p.domain_radius = z.imag().norm();
  p.jet_order = order;
  p.direction_norm = matrix_2norm(direction);
  const int radius = truncation_radius(p, tol);
  auto table = MonomialTable::get(nv, order);
  const int nm = table->size();
  const int rr = r();
  const int nb = dimension();
  CMat acc = CMat::Zero(nm, nb * rr);
  CVec mono(nm);
  std::vector<double> inv_exp(nm * std::max(nv, 1), 0.0);
  for (int i = 1; i < nm; ++i) {
    const int j = table->parent_var(i);
    inv_exp[i] = 1.0 / table->index(i)[j];
  }
  const CMat& om = omega_.matrix();
  const double d = degree();
  const CMat dir_t = direction.transpose();
  double sum_abs = 0.0;
  std::vector<CVec> l0s(seed_count_);
  for (int s = 0; s < seed_count_; ++s) l0s[s] = l0(s).cast<cplx>();
  const CVec two_pi_i_z = 2.0 * kPi * kI * z;
  const bool fast = sys_.is_identity() && rr == 1;
  // Terms below kSkip times the running magnitude are dropped and their bound is added to the error.
  constexpr double kSkip = 1e-3 * kEps;
  double skipped = 0.0;
  double sum_mag = 0.0;
  CVec lpc(g());
  CVec om_lp(g());
  CVec big_l(g());
  CVec u(nv);
  CMat apow;
  for (const IVec& lp : shell_ordered_box(g(), radius)) {
    lpc = lp.cast<cplx>();
    om_lp.noalias() = om * lpc;
    const cplx quad = d * kPi * kI * (lpc.transpose() * om_lp)(0);
    double pow_norm = 1.0;
    if (!fast) {
      apow = sys_.power(-lp);
      pow_norm = apow.cwiseAbs().rowwise().sum().maxCoeff();
    }
    for (int s = 0; s < seed_count_; ++s) {
      big_l = l0s[s] + d * lpc;
      const cplx e = quad + 2.0 * kPi * kI * (l0s[s].transpose() * om_lp)(0) + (big_l.transpose() * two_pi_i_z)(0);
      u.noalias() = 2.0 * kPi * kI * (dir_t * big_l);
      const double bound = pow_norm * std::exp(e.real() + order * std::log1p(u.norm()));
      const double mag = pow_norm * std::exp(e.real());
      if (bound < kSkip * sum_abs && mag < kSkip * sum_mag) {
        skipped += bound;
        continue;
      }
      const cplx t = std::exp(e);
      mono[0] = t;
      for (int i = 1; i < nm; ++i) {
        const int j = table->parent_var(i);
        mono[i] = mono[table->lower(i, j)] * u(j) * inv_exp[i];
      }
      sum_abs += bound;
      sum_mag += mag;
      if (fast) {
        acc.col(s) += mono;
      } else {
        for (int q = 0; q < rr; ++q) {
          for (int pc = 0; pc < rr; ++pc) {
            const cplx w = apow(pc, q);
            if (w != 0.0) acc.col((s * rr + q) * rr + pc) += w * mono;
          }
        }
      }
    }
  }
  ThetaJetTable out;
  out.truncation_radius = radius;
  out.error_bound = tail_bound(radius, p) + 8.0 * kEps * sum_abs + skipped;
  out.basis.resize(nb);
  for (int b = 0; b < nb; ++b) {
    for (int pc = 0; pc < rr; ++pc) out.basis[b].emplace_back(table, acc.col(b * rr + pc));
  }
  return out;
}

VectorTheta::VectorTheta(std::shared_ptr<const ThetaSpace> space, CVec seeds)
    : space_(std::move(space)), seeds_(std::move(seeds)) {
  if (seeds_.size() != space_->dimension()) fail(ErrorCode::DimensionMismatch, "seed vector length must be r s^g");
  if (seeds_.cwiseAbs().maxCoeff() == 0.0) fail(ErrorCode::DegenerateMatrix, "all seeds vanish");
}

VectorTheta VectorTheta::unit(std::shared_ptr<const ThetaSpace> space, int seed_slot) {
  CVec a = CVec::Zero(space->dimension());
  if (seed_slot < 0 || seed_slot >= a.size()) fail(ErrorCode::IndexOutOfRange, "seed slot");
  a(seed_slot) = 1.0;
  return VectorTheta(std::move(space), a);
}

CVec VectorTheta::coefficient(const IVec& l) const {
  const int g = space_->g();
  const int d = space_->degree();
  if (l.size() != g) fail(ErrorCode::DimensionMismatch, "lattice index length");
  IVec lp(g);
  IVec l0(g);
  for (int j = 0; j < g; ++j) {
    lp(j) = floor_div(l(j), d);
    l0(j) = l(j) - d * lp(j);
  }
  const CVec lpc = lp.cast<cplx>();
  const CVec l0c = l0.cast<cplx>();
  const CMat& om = space_->omega().matrix();
  const cplx e = static_cast<double>(d) * kPi * kI * (lpc.transpose() * om * lpc)(0) +
                 2.0 * kPi * kI * (l0c.transpose() * om * lpc)(0);
  return std::exp(e) * (space_->system().power(-lp) * seed(space_->l0_index(l0)));
}

double VectorTheta::seed_weight() const {
  double w = 0.0;
  for (int s = 0; s < space_->seed_count(); ++s) w += seed(s).norm();
  return w;
}

int VectorTheta::truncation_radius(double domain_radius, double tol, int deriv_order) const {
  MajorantParams p;
  p.domain_radius = domain_radius;
  p.jet_order = deriv_order;
  return space_->truncation_radius(p, tol / seed_weight());
}

CVec VectorTheta::evaluate_with_radius(const CVec& z, const MultiIndex& deriv, int radius) const {
  const int g = space_->g();
  const double d = space_->degree();
  CVec acc = CVec::Zero(space_->r());
  for (const IVec& lp : shell_ordered_box(g, radius)) {
    for (int s = 0; s < space_->seed_count(); ++s) {
      const IVec big_l = space_->l0(s) + space_->degree() * lp;
      cplx factor = 1.0;
      for (int j = 0; j < g; ++j) {
        if (deriv[j] > 0) factor *= std::pow(2.0 * kPi * kI * static_cast<double>(big_l(j)), deriv[j]);
      }
      const cplx phase = std::exp(2.0 * kPi * kI * (big_l.cast<cplx>().transpose() * z)(0));
      acc += factor * phase * coefficient(big_l);
    }
  }
  (void)d;
  return acc;
}

ThetaValue VectorTheta::evaluate(const CVec& z, const MultiIndex& deriv, double tol) const {
  const int g = space_->g();
  if (z.size() != g || static_cast<int>(deriv.size()) != g) fail(ErrorCode::DimensionMismatch, "evaluation point");
  const int k = order(deriv);
  ThetaValue out;
  const CMat id = CMat::Identity(g, g);
  // Reuse the jet machinery for the terms and the certificate, then read off one coefficient.
  ThetaJetTable t = space_->jets(z, id, k, 0.5 * tol / seed_weight());
  out.value = CVec::Zero(space_->r());
  const double scale = factorial(deriv);
  for (int b = 0; b < space_->dimension(); ++b) {
    if (seeds_(b) == 0.0) continue;
    for (int p = 0; p < space_->r(); ++p) out.value(p) += seeds_(b) * t.basis[b][p].coeff(deriv) * scale;
  }
  out.truncation_radius = t.truncation_radius;
  out.error_bound = seed_weight() * t.error_bound * scale;
  return out;
}

std::vector<Jet> VectorTheta::evaluate_jet(const CVec& z, const CMat& direction, int order, double tol) const {
  ThetaJetTable t = space_->jets(z, direction, order, tol / seed_weight());
  std::vector<Jet> out(space_->r(), Jet(static_cast<int>(direction.cols()), order));
  for (int b = 0; b < space_->dimension(); ++b) {
    if (seeds_(b) == 0.0) continue;
    for (int p = 0; p < space_->r(); ++p) out[p] += t.basis[b][p] * seeds_(b);
  }
  return out;
}

CVec random_torus_point(const RiemannMatrix& omega, std::mt19937_64& rng) {
  const int g = omega.g();
  CVec u(g);
  CVec v(g);
  for (int j = 0; j < g; ++j) u(j) = uniform(rng, -0.5, 0.5);
  for (int j = 0; j < g; ++j) v(j) = uniform(rng, -0.5, 0.5);
  return u + omega.matrix() * v;
}

ThetaBasis theta_basis(const MultiplierSystem& sys, const RiemannMatrix& omega, std::mt19937_64& rng,
                       double rank_tol) {
  auto space = std::make_shared<const ThetaSpace>(sys, omega);
  ThetaBasis out;
  const int dim = space->dimension();
  for (int b = 0; b < dim; ++b) out.elements.push_back(VectorTheta::unit(space, b));
  const int npts = dim + 5;
  const int r = space->r();
  CMat e(npts * r, dim);
  const CMat id = CMat::Identity(omega.g(), omega.g());
  for (int i = 0; i < npts; ++i) {
    const CVec z = random_torus_point(omega, rng);
    ThetaJetTable t = space->jets(z, id, 0, 1e-15);
    for (int b = 0; b < dim; ++b) {
      for (int p = 0; p < r; ++p) e(i * r + p, b) = t.basis[b][p].value();
    }
  }
  // Columns are normalized so the witness measures independence rather than scale.
  for (int b = 0; b < dim; ++b) e.col(b) /= e.col(b).norm();
  out.singular_values = singular_values(e);
  out.gram_rank = numerical_rank(e, rank_tol);
  if (out.gram_rank != dim) {
    fail(ErrorCode::RankDeficient, "theta basis evaluation rank " + std::to_string(out.gram_rank) + " < " +
                                       std::to_string(dim));
  }
  return out;
}

double theta_quasi_periodicity_residual(const VectorTheta& theta, const CVec& z, const IVec& m, const IVec& n,
                                        double tol) {
  const RiemannMatrix& om = theta.space().omega();
  const CVec shifted = z + om.lattice_vector(n, m);
  const CVec lhs = theta.evaluate(shifted, tol).value;
  const CVec rhs = multiplier(theta.space().system(), om, {n, m}, z) * theta.evaluate(z, tol).value;
  return (lhs - rhs).norm() / std::max(rhs.norm(), 1.0);
}

}  // namespace commring
