#pragma once

#include <vector>

#include "commring/ba_element.hpp"

namespace commring {

/// Everything a collocation row needs at one sample point.
struct PointJets {
  DivisorPoint divisor;
  /// phi[j][p]: component p of element j as a jet in the frame variables.
  std::vector<std::vector<Jet>> phi;
};

/// Jets of all elements at every point; `log_order` bounds the log-theta derivatives kept.
std::vector<PointJets> compute_point_jets(const std::vector<BAElement>& elements, const Divisor& div,
                                          const std::vector<CVec>& points, const JetFrame& frame, int order,
                                          int log_order, int jobs = 1);

}  // namespace commring
