#pragma once

#include <optional>
#include <vector>

#include "edgroups/group.hpp"
#include "edgroups/matcore.hpp"

namespace edg {

/// A critical point of d_u(x) = ||u - x||^2 on a group. Distances are always
/// in the real Frobenius metric; complex points report the distance of their
/// real embeddings.
template <typename Scalar>
struct CriticalPoint {
  Mat<Scalar> x;
  double distance_sq = 0.0;
  int det_sign = 1;
  double residual = 0.0;
  std::optional<double> c;  // Lagrange multiplier, SL groups only
};

/// Polar decomposition x = u s^{-1}, s = y diag(+sqrt(lambda)) y^t.
CriticalPoint<double> nearest_orthogonal(const Matrix& u);

/// All 2^n critical points on O(n), one per sign vector, in lexicographic
/// order of the signs with + before -.
std::vector<CriticalPoint<double>> enumerate_orthogonal_critical(const Matrix& u);

/// Closest point with determinant +1: the polar factor when det u > 0,
/// otherwise the smallest square root flipped.
CriticalPoint<double> nearest_special_orthogonal(const Matrix& u);

CriticalPoint<Complex> nearest_unitary(const CMatrix& u);

/// All 2^m critical points on U(m).
std::vector<CriticalPoint<Complex>> enumerate_unitary_critical(const CMatrix& u);

template <typename Scalar>
struct GperpDecomposition {
  Mat<Scalar> s;         // x^{-1} u
  bool in_gperp = false; // symmetric (orthogonal) / Hermitian (unitary)
  double trace = 0.0;    // real trace tr_R(s)
};

/// Splits u = x s for x in an inner-product-preserving group.
GperpDecomposition<double> gperp_decompose(const Matrix& u, const Matrix& x, const GroupSpec& group);
GperpDecomposition<Complex> gperp_decompose(const CMatrix& u, const CMatrix& x);

/// Norm of the projection of x^t (u - x) onto skew-symmetric matrices.
double orthogonal_residual(const Matrix& x, const Matrix& u);
/// Same for skew-Hermitian matrices, measured in the real embedding.
double unitary_residual(const CMatrix& x, const CMatrix& u);

}  // namespace edg
