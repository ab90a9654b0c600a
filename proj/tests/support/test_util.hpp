#pragma once

#include <random>

#include "commring/jet.hpp"
#include "commring/random.hpp"

namespace commring::testing {

inline Jet random_jet(std::mt19937_64& rng, int vars, int order) {
  Jet j(vars, order);
  for (int i = 0; i < j.size(); ++i) j[i] = complex_normal(rng);
  return j;
}

inline double rel_err(const Jet& a, const Jet& b) {
  return jet_distance(a, b) / std::max({a.max_abs(), b.max_abs(), 1.0});
}

}  // namespace commring::testing
