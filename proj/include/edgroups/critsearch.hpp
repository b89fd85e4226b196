#pragma once

#include <cstdint>
#include <vector>

#include "edgroups/group.hpp"
#include "edgroups/orthonear.hpp"

namespace edg {

/// Spanning set of the Lie algebra of g (not orthonormalized).
std::vector<Matrix> lie_basis(const GroupSpec& g);

/// Frobenius-orthonormal version of lie_basis(g).
std::vector<Matrix> orthonormal_lie_basis(const GroupSpec& g);

/// Norm of the projection of x^t (u - x) onto the Lie algebra plus the
/// membership violation of x. Vanishes exactly at critical points on g.
double critical_residual(const Matrix& x, const Matrix& u, const GroupSpec& g);

Matrix random_group_element(const GroupSpec& g, std::uint64_t seed);

struct CensusOptions {
  int max_iterations = 200;
  double converge_tol = 1e-9;
  double cluster_radius = 1e-5;  // scaled by 1 + ||u||
  double anchor_weight = 0.2;    // start = (1 - w) random element + w projected u
};

struct Census {
  std::vector<CriticalPoint<double>> points;  // by distance, then entries
  int converged = 0;
  int dropped = 0;
};

/// Gauss-Newton from `starts` seeded starts; converged points are clustered
/// by single linkage. Deterministic in (u, g, starts, seed).
Census multistart_census(const Matrix& u, const GroupSpec& g, int starts, std::uint64_t seed,
                         const CensusOptions& options = {});

/// True when every point of `a` lies within `radius` of some point of `b`.
bool point_subset(const std::vector<CriticalPoint<double>>& a, const std::vector<CriticalPoint<double>>& b,
                  double radius);

bool same_point_set(const std::vector<CriticalPoint<double>>& a, const std::vector<CriticalPoint<double>>& b,
                    double radius);

}  // namespace edg
