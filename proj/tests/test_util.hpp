#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "edgelat/cumulants.hpp"
#include "edgelat/rational.hpp"

namespace testutil {

// Deterministic generator for property-style tests.
class Lcg {
 public:
  explicit Lcg(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return s_ >> 11;
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (next() % (1ULL << 40)) / static_cast<double>(1ULL << 40);
  }
  edgelat::BigRational rational(long num_lo, long num_hi, long den_hi) {
    edgelat::BigRational q(range(num_lo, num_hi), range(1, den_hi));
    q.canonicalize();
    return q;
  }

 private:
  uint64_t s_;
};

// Random pmf on a few integer points with exact probabilities summing to 1.
inline std::vector<std::pair<long, edgelat::BigRational>> random_pmf(Lcg& rng, int max_points = 5) {
  int k = static_cast<int>(rng.range(2, max_points));
  std::vector<long> support;
  while (static_cast<int>(support.size()) < k) {
    long v = rng.range(-4, 8);
    bool dup = false;
    for (long s : support) dup = dup || s == v;
    if (!dup) support.push_back(v);
  }
  std::vector<long> weights;
  long total = 0;
  for (int i = 0; i < k; ++i) {
    long w = rng.range(1, 9);
    weights.push_back(w);
    total += w;
  }
  std::vector<std::pair<long, edgelat::BigRational>> pmf;
  for (int i = 0; i < k; ++i)
    pmf.emplace_back(support[i], edgelat::rational(weights[i], total));
  return pmf;
}

}  // namespace testutil
