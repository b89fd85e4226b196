#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgroups/matcore.hpp"
#include "edgroups/orthonear.hpp"
#include "edgroups/polyres.hpp"

namespace edg {

/// Real critical point of d_u on SL^{+-}: x^t (u - x) = c I, s = x^t x has
/// eigenvalues lambdas in the eigenbasis of u^t u.
struct SLSolution {
  double c = 0.0;
  Eigen::VectorXd lambdas;
  Matrix s;
  Matrix x;
  double distance_sq = 0.0;
  int det_sign = 1;
  double residual = 0.0;  // traceless part of x^t (u - x)

  CriticalPoint<double> as_critical_point() const;
};

struct SLOptions {
  /// Allows n = 5 (R_1 of degree 160); the default pipeline stops at n = 4.
  bool experimental = false;
  /// Recomputes every lambda vector from the Sylvester kernels and throws
  /// InvariantViolation on disagreement.
  bool kernel_cross_check = false;
  std::uint64_t chain_seed = 0;
};

struct SLAnalysis {
  Eigen::VectorXd mu;  // eigenvalues of u^t u, descending
  Matrix t;            // matching orthonormal eigenvectors
  ChainResult chain;
  std::vector<Complex> roots;      // all complex roots of R_1
  std::vector<double> real_roots;  // ascending
  int complex_root_count = 0;      // distinct roots at tol 1e-7
  std::vector<SLSolution> solutions;
};

SLAnalysis sl_analyze(const Matrix& u, const SLOptions& options = {});

/// All real critical points, sorted by distance then c.
std::vector<SLSolution> sl_critical_points(const Matrix& u, const SLOptions& options = {});

enum class SLComponent { pm, plus };

SLSolution nearest_sl(const Matrix& u, SLComponent component, const SLOptions& options = {});

/// Distinct complex roots of R_1 for random_general(n, seed).
int sl_ed_degree(int n, std::uint64_t seed);

struct SmallestCReport {
  bool holds = false;
  double c_min_abs = 0.0;  // real root of least |c| that lifts to a solution
  double c_of_minimizer = 0.0;
};

/// Records whether the real root of least modulus yields the closest point.
SmallestCReport smallest_c_check(const Matrix& u);

/// Roots with imaginary part below 1e-8 max(1, |r|), or isolated from every
/// other root by more than 10 |Im r|, snapped to the real axis.
std::vector<double> select_real_roots(std::span<const Complex> roots);

/// lambda_1, ..., lambda_n read from the one-dimensional kernels of the
/// Sylvester matrices along the chain at a root c of R_1.
Eigen::VectorXd lambdas_from_sylvester_kernels(double c, std::span<const double> mu);

}  // namespace edg
