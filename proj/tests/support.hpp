#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "edgroups/matcore.hpp"

namespace testing {

// Seeded draws for property tests; every generator is a pure function of the
// seed so failures replay.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed * 0x9e3779b97f4a7c15ULL + 17) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  edg::Matrix matrix(int n, double lo = -1.0, double hi = 1.0) {
    edg::Matrix a(n, n);
    for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = uniform(lo, hi);
    return a;
  }

  edg::Matrix symmetric(int n) {
    const edg::Matrix a = matrix(n);
    return 0.5 * (a + a.transpose());
  }

  // Positive, pairwise separated, descending.
  std::vector<double> spectrum(int n, double lo = 0.1, double hi = 3.0) {
    for (;;) {
      std::vector<double> mu(static_cast<std::size_t>(n));
      for (double& m : mu) m = uniform(lo, hi);
      std::sort(mu.rbegin(), mu.rend());
      bool separated = true;
      for (std::size_t i = 1; i < mu.size(); ++i) separated &= mu[i - 1] - mu[i] > 0.05;
      if (separated) return mu;
    }
  }
};

inline double max_abs(const edg::Matrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace testing
