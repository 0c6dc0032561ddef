#pragma once

#include <cstdint>
#include <random>

#include "cas/types.hpp"

namespace cas::detail {

// Per-index streams: stream i of a run seeded with s uses engine(s + i).
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(seed + index);
}

inline Vector random_unit_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

}  // namespace cas::detail
