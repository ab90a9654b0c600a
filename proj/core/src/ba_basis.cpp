#include "commring/ba_basis.hpp"

#include <algorithm>
#include <cmath>

#include "commring/error.hpp"
#include "commring/linalg.hpp"

namespace commring {

std::vector<int> BABasis::levels() const {
  std::vector<int> out;
  for (const auto& e : elements) out.push_back(e.level);
  return out;
}

int BABasis::max_level() const {
  int m = 0;
  for (const auto& e : elements) m = std::max(m, e.level);
  return m;
}

int BABasis::min_level() const {
  int m = elements.empty() ? 0 : elements.front().level;
  for (const auto& e : elements) m = std::min(m, e.level);
  return m;
}

CMat spanning_values(const std::vector<std::vector<std::vector<Jet>>>& jets, const std::vector<int>& levels, int n,
                     int derivative_vars) {
  if (jets.empty()) return CMat();
  const int r = static_cast<int>(jets.front().front().size());
  const int vars = jets.front().front().front().vars();
  std::vector<std::pair<int, MultiIndex>> cols;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (levels[j] > n) continue;
    for (const auto& a : indices_up_to(derivative_vars, n - levels[j])) {
      MultiIndex full(vars, 0);
      std::copy(a.begin(), a.end(), full.begin());
      cols.emplace_back(static_cast<int>(j), full);
    }
  }
  CMat m(static_cast<Eigen::Index>(jets.size()) * r, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t pt = 0; pt < jets.size(); ++pt) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (int p = 0; p < r; ++p) {
        m(static_cast<Eigen::Index>(pt) * r + p, static_cast<Eigen::Index>(c)) =
            jets[pt][cols[c].first][p].derivative_value(cols[c].second);
      }
    }
  }
  return m;
}

std::vector<CVec> random_points_off_divisor(const Divisor& div, int count, std::mt19937_64& rng, double margin) {
  std::vector<CVec> pts;
  int tries = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++tries > 50 * count + 100) fail(ErrorCode::InsufficientPoints, "could not find points off the divisor");
    CVec z = random_torus_point(div.omega(), rng);
    if (std::abs(div.theta_jet(z, 0).value()) > margin) pts.push_back(z);
  }
  return pts;
}

namespace {

void normalize_columns(CMat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double n = m.col(j).norm();
    if (n > 0.0) m.col(j) /= n;
  }
}

}  // namespace

BABasis assemble_basis(const Divisor& div, const MultiplierSystem& sys, std::optional<CVec> c, std::uint64_t seed,
                       const BasisOptions& opts) {
  const int g = div.g();
  const int s = div.degree();
  if (sys.g() != g || sys.s() != s) fail(ErrorCode::DimensionMismatch, "multiplier system and divisor disagree");
  const RandomStreams streams(seed);
  BABasis out;
  out.signature = signature(g, sys.r(), s);
  const auto levels = out.signature.levels();
  std::vector<std::shared_ptr<const ThetaSpace>> spaces(g + 1);
  for (int n = 1; n <= g; ++n) {
    spaces[n] = std::make_shared<const ThetaSpace>(sys.with_degree(s * n), div.omega());
  }
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    auto rng = streams.stream("basis", static_cast<std::uint64_t>(attempt));
    out.attempts = attempt + 1;
    out.c = c ? *c : random_torus_point(div.omega(), rng);
    out.elements.clear();
    int unit = 0;
    for (int lvl : levels) {
      const auto& space = spaces[lvl];
      if (lvl == 1) {
        out.elements.push_back(make_element(div, 1, VectorTheta::unit(space, unit++), out.c));
      } else {
        out.elements.push_back(
            make_element(div, lvl, VectorTheta(space, complex_normal_vector(rng, space->dimension())), out.c));
      }
    }
    const int npts = static_cast<int>(F(0, g, sys.r(), s, g)) + opts.extra_points;
    auto prng = streams.stream("basis-witness", static_cast<std::uint64_t>(attempt));
    const auto pts = random_points_off_divisor(div, npts, prng);
    std::vector<std::vector<std::vector<Jet>>> jets;
    const JetFrame frame = JetFrame::full(g);
    for (const auto& z : pts) {
      jets.push_back(evaluate_basis_jets(out.elements, div, div.at(z, 1), frame, g - 1));
    }
    out.witness_ranks.clear();
    out.expected.clear();
    bool ok = true;
    for (int n = 1; n <= g; ++n) {
      CMat vals = spanning_values(jets, levels, n, g);
      normalize_columns(vals);
      const int rank = numerical_rank(vals, opts.rank_tol);
      out.witness_ranks.push_back(rank);
      out.expected.push_back(F(0, n, sys.r(), s, g));
      if (rank != out.expected.back()) ok = false;
    }
    if (ok) return out;
  }
  fail(ErrorCode::GeneralPositionFailure, "rank witnesses failed after " + std::to_string(opts.max_attempts) +
                                              " draws");
}

}  // namespace commring
