#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "commring/types.hpp"

namespace commring {

/// Deterministic named sub-streams derived from one master seed.
class RandomStreams {
 public:
  explicit RandomStreams(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::mt19937_64 stream(std::string_view name, std::uint64_t index = 0) const;

 private:
  std::uint64_t seed_;
};

double uniform(std::mt19937_64& rng, double lo, double hi);
double normal(std::mt19937_64& rng);
cplx complex_normal(std::mt19937_64& rng);
CVec complex_normal_vector(std::mt19937_64& rng, int n);

}  // namespace commring
