#include "commring/ba_element.hpp"

#include <algorithm>
#include <map>

#include "commring/error.hpp"

namespace commring {

JetFrame JetFrame::full(int g) { return leading(g, g); }

JetFrame JetFrame::leading(int g, int nv) {
  JetFrame f;
  f.P = CMat::Identity(g, nv);
  f.base = CVec::Zero(g);
  return f;
}

int JetFrame::flow_order() const {
  int k = 0;
  for (const auto& fl : flows) k = std::max(k, order(fl.m));
  for (const auto& fl : fixed_flows) k = std::max(k, order(fl.m));
  return k;
}

BAElement make_element(const Divisor& div, int level, VectorTheta numerator, CVec c, std::optional<Jet> prefactor) {
  if (level < 1) fail(ErrorCode::ConfigInvalid, "level must be positive");
  if (numerator.space().degree() != div.degree() * level) {
    fail(ErrorCode::DimensionMismatch, "numerator degree must equal s * level");
  }
  if (c.size() != div.g()) fail(ErrorCode::DimensionMismatch, "parameter c must have dimension g");
  BAElement e{level, std::move(numerator), std::move(c), true, std::move(prefactor)};
  return e;
}

namespace {

/// Jet of exp(-(1/s) <base + P y, w> + sum_flows y_var mu).
Jet gauge_jet(const DivisorPoint& point, const JetFrame& frame, int s, int order) {
  const CVec w = point.log_gradient();
  const double inv_s = 1.0 / s;
  CVec lin = -inv_s * (frame.P.transpose() * w);
  for (const auto& fl : frame.flows) {
    if (fl.var < 0 || fl.var >= frame.vars()) fail(ErrorCode::IndexOutOfRange, "flow variable");
    lin(fl.var) += -inv_s * point.log_derivative(fl.m);
  }
  cplx c0 = -inv_s * (frame.base.transpose() * w)(0);
  for (const auto& fl : frame.fixed_flows) c0 += -inv_s * fl.t * point.log_derivative(fl.m);
  return jet_exp(Jet::linear(order, c0, lin));
}

}  // namespace

std::vector<std::vector<Jet>> evaluate_basis_jets(const std::vector<BAElement>& elements, const Divisor& div,
                                                  const DivisorPoint& point, const JetFrame& frame, int order,
                                                  bool include_gauge) {
  const int s = div.degree();
  const cplx vt = point.value();
  const Jet gauge = include_gauge ? gauge_jet(point, frame, s, order) : Jet::constant(frame.vars(), order, 1.0);
  std::map<std::pair<const ThetaSpace*, std::size_t>, ThetaJetTable> tables;
  std::vector<CVec> params;
  std::vector<std::vector<Jet>> out;
  out.reserve(elements.size());
  for (const auto& e : elements) {
    const double sn = e.numerator.space().degree();
    std::size_t pid = 0;
    while (pid < params.size() && params[pid] != e.c) ++pid;
    if (pid == params.size()) params.push_back(e.c);
    const auto key = std::make_pair(&e.numerator.space(), pid);
    auto it = tables.find(key);
    if (it == tables.end()) {
      const CVec zs = point.z + (frame.base + e.c) / sn;
      it = tables.emplace(key, e.numerator.space().jets(zs, frame.P / sn, order, 1e-15)).first;
    }
    const ThetaJetTable& t = it->second;
    const int r = e.numerator.space().r();
    const cplx scale = 1.0 / std::pow(vt, e.level);
    Jet factor = (e.gauge ? gauge : Jet::constant(frame.vars(), order, 1.0)) * scale;
    if (e.prefactor) factor = jet_mul(factor, *e.prefactor);
    std::vector<Jet> comps(r, Jet(frame.vars(), order));
    const CVec& seeds = e.numerator.seeds();
    for (int b = 0; b < seeds.size(); ++b) {
      if (seeds(b) == 0.0) continue;
      for (int p = 0; p < r; ++p) comps[p] += t.basis[b][p] * seeds(b);
    }
    for (auto& cj : comps) cj = jet_mul(cj, factor);
    out.push_back(std::move(comps));
  }
  return out;
}

std::vector<Jet> evaluate_jet(const BAElement& e, const Divisor& div, const CVec& z, const JetFrame& frame, int order) {
  const DivisorPoint p = div.at(z, std::max(1, frame.flow_order()));
  return evaluate_basis_jets({e}, div, p, frame, order).front();
}

std::vector<Jet> evaluate_section_jet(const BAElement& e, const Divisor& div, const CVec& z, const JetFrame& frame,
                                      int order) {
  BAElement bare = e;
  bare.gauge = false;
  bare.prefactor.reset();
  JetFrame plain = frame;
  plain.flows.clear();
  plain.fixed_flows.clear();
  const DivisorPoint p = div.at(z, 1);
  return evaluate_basis_jets({bare}, div, p, plain, order, false).front();
}

std::vector<Jet> covariant_derivative(const std::vector<Jet>& section, int j, const CVec& w, int s) {
  std::vector<Jet> out;
  for (const auto& f : section) {
    if (f.order() < 1) fail(ErrorCode::InsufficientJetOrder, "covariant derivative needs jet order >= 1");
    if (j < 0 || j >= f.vars() || j >= w.size()) fail(ErrorCode::IndexOutOfRange, "covariant derivative index");
    out.push_back(jet_derive(f, j) - f.truncated(f.order() - 1) * (w(j) / static_cast<double>(s)));
  }
  return out;
}

double quasi_periodicity_residual(const BAElement& e, const Divisor& div, const CVec& z, const IVec& m, const IVec& k,
                                  int order) {
  const int g = div.g();
  const JetFrame frame = JetFrame::full(g);
  const CVec shift = div.omega().lattice_vector(k, m);
  const auto lhs = evaluate_section_jet(e, div, z + shift, frame, order);
  const auto rhs0 = evaluate_section_jet(e, div, z, frame, order);
  const CVec mc = m.cast<cplx>();
  const cplx c0 = -2.0 * kPi * kI * (mc.transpose() * e.c)(0);
  const Jet ex = jet_exp(Jet::linear(order, c0, -2.0 * kPi * kI * mc));
  const CMat am = e.numerator.space().system().power(m);
  const int r = static_cast<int>(lhs.size());
  double num = 0.0;
  double den = 0.0;
  for (int p = 0; p < r; ++p) {
    Jet rhs(g, order);
    for (int q = 0; q < r; ++q) rhs += rhs0[q] * am(p, q);
    rhs = jet_mul(rhs, ex);
    num = std::max(num, jet_distance(lhs[p], rhs));
    den = std::max(den, rhs.max_abs());
  }
  return num / std::max(den, 1e-300);
}

}  // namespace commring
