#include "commring/restriction.hpp"

#include "commring/error.hpp"
#include "commring/linalg.hpp"

namespace commring {

int restriction_rank(CMat values, double rel_tol, RVec* sv) {
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    const double m = values.row(i).cwiseAbs().maxCoeff();
    if (m > 0.0) values.row(i) /= m;
  }
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    const double n = values.col(j).norm();
    if (n > 0.0) values.col(j) /= n;
  }
  const RVec s = singular_values(values);
  if (sv) *sv = s;
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

RestrictionResult restriction_rank(const BABasis& basis, const Divisor& div, const SubvarietySample& sample, int n,
                                   int j, double rel_tol) {
  const int g = div.g();
  const auto& sys = basis.elements.front().numerator.space().system();
  std::vector<std::vector<std::vector<Jet>>> jets;
  const JetFrame frame = JetFrame::full(g);
  for (const auto& z : sample.points) {
    jets.push_back(evaluate_basis_jets(basis.elements, div, div.at(z, 1), frame, std::max(0, n - 1)));
  }
  const CMat vals = spanning_values(jets, basis.levels(), n, g);
  RestrictionResult out;
  out.columns = static_cast<int>(vals.cols());
  out.points = static_cast<int>(sample.points.size());
  out.rank = restriction_rank(vals, rel_tol, &out.singular_values);
  out.expected = F(j + 1, n, sys.r(), div.degree(), g);
  return out;
}

CMat theta_space_values(const Divisor& div, const MultiplierSystem& sys, const CVec& c, int n,
                        const std::vector<CVec>& points) {
  const int g = div.g();
  const ThetaSpace space(sys.with_degree(div.degree() * n), div.omega());
  const double sn = space.degree();
  const int r = space.r();
  CMat m(static_cast<Eigen::Index>(points.size()) * r, space.dimension());
  const CMat zero_dir = CMat::Zero(g, 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const cplx vt = div.at(points[i], 0).value();
    const ThetaJetTable t = space.jets(points[i] + c / sn, zero_dir, 0, 1e-15);
    for (int b = 0; b < space.dimension(); ++b) {
      for (int p = 0; p < r; ++p) m(static_cast<Eigen::Index>(i) * r + p, b) = t.basis[b][p].value() / std::pow(vt, n);
    }
  }
  return m;
}

VWSplit vw_split(const BABasis& basis, const Divisor& div, const TranslatedDivisor& translate, int n,
                 const std::vector<CVec>& points, double rel_tol) {
  const int g = div.g();
  const int s = div.degree();
  const auto& sys = basis.elements.front().numerator.space().system();
  if (n < 2) fail(ErrorCode::ConfigInvalid, "dimension split needs n >= 2");
  std::vector<std::vector<std::vector<Jet>>> jets;
  const JetFrame frame = JetFrame::full(g);
  for (const auto& z : points) {
    jets.push_back(evaluate_basis_jets(basis.elements, div, div.at(z, 1), frame, n - 1));
  }
  const CMat v = spanning_values(jets, basis.levels(), n, g - 1);
  CMat w = theta_space_values(div, sys, basis.c + static_cast<double>(s) * translate.a, n - 1, points);
  const int r = sys.r();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const cplx factor = translate.theta.evaluate(points[i] - translate.a, 1e-15).value(0) /
                        div.at(points[i], 0).value();
    w.middleRows(static_cast<Eigen::Index>(i) * r, r) *= factor;
  }
  VWSplit out;
  out.columns_v = static_cast<int>(v.cols());
  out.columns_w = static_cast<int>(w.cols());
  out.rank_v = restriction_rank(v, rel_tol);
  out.rank_w = restriction_rank(w, rel_tol);
  CMat both(v.rows(), v.cols() + w.cols());
  both << v, w;
  out.rank_union = restriction_rank(both, rel_tol);
  out.expected = F(0, n, r, s, g);
  return out;
}

}  // namespace commring
