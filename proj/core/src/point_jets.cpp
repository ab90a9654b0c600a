#include "commring/point_jets.hpp"

#include <algorithm>

#include "commring/parallel.hpp"

namespace commring {

std::vector<PointJets> compute_point_jets(const std::vector<BAElement>& elements, const Divisor& div,
                                          const std::vector<CVec>& points, const JetFrame& frame, int order,
                                          int log_order, int jobs) {
  std::vector<PointJets> out(points.size());
  const int lo = std::max({1, log_order, frame.flow_order()});
  parallel_for(static_cast<int>(points.size()), jobs, [&](int i) {
    out[i].divisor = div.at(points[i], lo);
    out[i].phi = evaluate_basis_jets(elements, div, out[i].divisor, frame, order);
  });
  return out;
}

}  // namespace commring
