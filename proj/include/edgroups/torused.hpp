#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace edg {

/// Characters of a compact torus (S^1)^m acting on V, with the dimension of
/// each weight space.
struct WeightSet {
  int m = 1;
  std::vector<std::vector<int>> weights;
  std::vector<int> multiplicities;
};

/// Centrally symmetric with matching multiplicities, distinct weights, and
/// generating a full-rank lattice.
bool validate_weightset(const WeightSet& w);

/// Rank of the integer lattice spanned by the given vectors.
int lattice_rank(const std::vector<std::vector<int>>& vectors);

/// Normalized volume (m! times Euclidean volume) of the convex hull of the
/// weights; ranks 1 to 3.
long long bkk_bound(const WeightSet& w);

/// Counts the nonzero solutions of sum_chi chi u'_chi t^chi = 0 for a rank-1
/// weight set. With lattice_index 2 the equation is solved in t^2.
int torus_critical_count_rank1(const WeightSet& w, const std::map<int, double>& coeffs, int lattice_index);

struct TightnessReport {
  long long bound = 0;            // normalized in Z^1
  long long corrected_bound = 0;  // normalized in the index-lattice_index sublattice
  std::vector<int> counts;
};

/// Exact counts over seeded coefficient draws 1..seeds next to the bound.
TightnessReport bkk_tightness_experiment(const WeightSet& w, int seeds, int lattice_index = 1);

/// Weights {-d, -d+2, ..., d} of SO_2 on (R^2)^{tensor d}, multiplicities
/// binomial(d, k).
WeightSet tensor_power_weightset(int d);

/// u'_chi: sums of dim V_chi diagonal entries drawn uniformly from [-1, 1].
std::map<int, double> character_coefficients(const WeightSet& w, std::uint64_t seed);

}  // namespace edg
