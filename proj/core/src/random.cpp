#include "commring/random.hpp"

namespace commring {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::mt19937_64 RandomStreams::stream(std::string_view name, std::uint64_t index) const {
  const std::uint64_t h = fnv1a(name);
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double normal(std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

cplx complex_normal(std::mt19937_64& rng) {
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

CVec complex_normal_vector(std::mt19937_64& rng, int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_normal(rng);
  return v;
}

}  // namespace commring
