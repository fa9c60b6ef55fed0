#pragma once

// Small seeded generators for property tests.

#include <random>
#include <vector>

#include "fusion/exact.hpp"

namespace testgen {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long integer(long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  fusion::Rat rat(long bound = 5) {
    // zero with some weight so that rank deficiency actually occurs
    if (integer(0, 3) == 0) return fusion::Rat(0);
    return fusion::Rat(integer(-bound, bound), integer(1, 3));
  }
  fusion::Vec vec(std::size_t n) {
    fusion::Vec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(rat());
    return v;
  }
  std::vector<fusion::Vec> vecs(std::size_t count, std::size_t n) {
    std::vector<fusion::Vec> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(vec(n));
    return out;
  }
};

}  // namespace testgen
